"""Item cards: the three-section pop-up view of one item."""

from __future__ import annotations

from ..kg import EntityKind, KnowledgeGraph, RelationKind, UnknownEntity


def build_item_card(kg: KnowledgeGraph, item_id: str) -> dict:
    """Appearance images, points of interest, and comments for one item.

    POIs include derived links, so completion must have run on the graph.
    Comments are the item's attribute values under keys starting with
    "comment", in key order.
    """
    entity = kg.entity(item_id)
    if entity.kind is not EntityKind.ITEM:
        raise UnknownEntity(f"{item_id!r} is {entity.kind.value}, not an item")
    appearance = [
        image.id for _, image in kg.neighbors(item_id, RelationKind.HAS_IMAGE)
    ]
    pois = []
    for _, poi in kg.neighbors(item_id, RelationKind.HAS_POI):
        images = [
            image.id for _, image in kg.neighbors(poi.id, RelationKind.HAS_IMAGE)
        ]
        pois.append({"id": poi.id, "label": poi.label, "images": images})
    comments = [
        str(entity.attributes[key])
        for key in sorted(entity.attributes)
        if key.startswith("comment")
    ]
    properties = [
        {"name": triple.qualifier or "", "value": value.label}
        for triple, value in kg.neighbors(item_id, RelationKind.HAS_PROPERTY)
    ]
    return {
        "id": item_id,
        "title": entity.label,
        "sections": {
            "appearance": appearance,
            "poi": pois,
            "comment": comments,
        },
        "properties": properties,
    }
