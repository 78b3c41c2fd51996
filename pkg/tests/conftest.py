import pytest

from livekg.kg import Entity, EntityKind, KnowledgeGraph, RelationKind, Triple


def build_mask_path_kg() -> KnowledgeGraph:
    """Beauty-domain fixture: one full scenario-to-item cognitive chain.

    stay-up-late scenario -> dull-skin problem -> fair-skin POI, satisfied by
    the dipotassium glycyrrhizinate ingredient of a facial mask item.
    """
    kg = KnowledgeGraph()
    kg.add_entity(Entity(
        "scn:aoye", EntityKind.SCENARIO, "熬夜", aliases=["stay up late"]
    ))
    kg.add_entity(Entity(
        "prb:anchen", EntityKind.PROBLEM, "皮肤暗沉", aliases=["dull skin"]
    ))
    kg.add_entity(Entity(
        "poi:baixi", EntityKind.POI, "皮肤白皙", aliases=["fair skin"]
    ))
    kg.add_entity(Entity(
        "pv:gancaosuan", EntityKind.PROPERTY_VALUE, "甘草酸二钾",
        aliases=["dipotassium glycyrrhizinate"],
    ))
    kg.add_entity(Entity(
        "item:mianmo", EntityKind.ITEM, "面膜", aliases=["facial mask"]
    ))
    kg.add_triple(Triple("scn:aoye", RelationKind.CAUSE, "prb:anchen"))
    kg.add_triple(Triple("prb:anchen", RelationKind.NEED, "poi:baixi"))
    kg.add_triple(Triple("pv:gancaosuan", RelationKind.SATISFY, "poi:baixi"))
    kg.add_triple(Triple(
        "item:mianmo", RelationKind.HAS_PROPERTY, "pv:gancaosuan",
        qualifier="ingredient",
    ))
    return kg


MASK_PATH_IDS = ["scn:aoye", "prb:anchen", "poi:baixi", "pv:gancaosuan", "item:mianmo"]


@pytest.fixture
def mask_path_kg() -> KnowledgeGraph:
    return build_mask_path_kg()
