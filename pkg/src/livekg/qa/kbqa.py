"""Property question answering over the knowledge graph."""

from __future__ import annotations

import logging
from typing import Mapping

from ..kg import EntityKind, KnowledgeGraph, RelationKind, UnknownEntity
from ..retrieval import Lexicon, ner_tag
from .types import AnswerPayload, AnswerSource

log = logging.getLogger(__name__)

DEFAULT_TEMPLATE = "{item}的{property}是{value}。"


def answer_property_question(
    query: str,
    item_id: str,
    kg: KnowledgeGraph,
    property_lexicon: Lexicon,
    templates: Mapping[str, str] | None = None,
    trace: list[str] | None = None,
) -> AnswerPayload | None:
    """Answer from the first property the query mentions, or None.

    The property lexicon maps question surfaces to property names ("多大" ->
    "尺码"). The answer value is the label of the item's matching property
    value entity; its linked images ride along. Extra identified properties
    are noted in the trace but not answered.
    """
    item = kg.entity(item_id)
    if item.kind is not EntityKind.ITEM:
        raise UnknownEntity(f"{item_id!r} is {item.kind.value}, not an item")
    spans = ner_tag(query, property_lexicon).spans
    if not spans:
        return None
    prop = spans[0].semtype
    extras = sorted({s.semtype for s in spans[1:]} - {prop})
    if extras:
        log.debug("unanswered extra properties in %r: %s", query, extras)
        if trace is not None:
            trace.append("kbqa:extra:" + ",".join(extras))
    for triple, value in kg.neighbors(item_id, RelationKind.HAS_PROPERTY):
        if triple.qualifier != prop:
            continue
        images = tuple(
            image.id
            for _, image in kg.neighbors(value.id, RelationKind.HAS_IMAGE)
        )
        template = (templates or {}).get(prop) or (templates or {}).get("*") \
            or DEFAULT_TEMPLATE
        text = template.format(item=item.label, property=prop, value=value.label)
        return AnswerPayload(text, images, AnswerSource.KBQA)
    return None
