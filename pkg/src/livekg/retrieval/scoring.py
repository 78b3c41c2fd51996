"""Enhanced similarity scoring and catalog search.

score(q, d) = alpha * Jaccard(q tokens, d tokens)
            + sum over semantic types t present in q:
                beta_t if some type-t surface of q is also a type-t surface
                of the doc (from its tagged text or its stored properties).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..kg import EntityKind, KnowledgeGraph, RelationKind
from .lexicon import Lexicon
from .tagger import TaggedText, ner_tag


class EmptyCatalog(LookupError):
    """Search over a graph that contains no items."""


@dataclass(frozen=True)
class ScoreWeights:
    alpha: float = 1.0
    betas: Mapping[str, float] = field(
        default_factory=lambda: {"category": 2.0, "brand": 1.5}
    )
    default_beta: float = 1.0

    def __post_init__(self) -> None:
        if self.alpha < 0 or self.default_beta < 0:
            raise ValueError("weights must be non-negative")
        if any(v < 0 for v in self.betas.values()):
            raise ValueError("weights must be non-negative")

    def beta(self, semtype: str) -> float:
        return self.betas.get(semtype, self.default_beta)


@dataclass(frozen=True)
class ItemDoc:
    """An item's searchable view: tagged profile text plus typed surfaces
    contributed by both the tagger and the item's has_property triples."""

    item_id: str
    tagged: TaggedText
    typed_surfaces: frozenset[tuple[str, str]]


def build_item_doc(kg: KnowledgeGraph, item_id: str, lexicon: Lexicon) -> ItemDoc:
    entity = kg.entity(item_id)
    if entity.kind is not EntityKind.ITEM:
        raise ValueError(f"{item_id!r} is {entity.kind.value}, not an item")
    parts = [entity.label, *entity.aliases]
    for key in sorted(entity.attributes):
        value = entity.attributes[key]
        if isinstance(value, str):
            parts.append(value)
    tagged = ner_tag(" ".join(parts), lexicon)
    typed = {(s.semtype, s.surface) for s in tagged.spans}
    for triple, value_entity in kg.neighbors(item_id, RelationKind.HAS_PROPERTY):
        if triple.qualifier:
            typed.add((triple.qualifier, value_entity.label))
    return ItemDoc(item_id, tagged, frozenset(typed))


def build_item_docs(kg: KnowledgeGraph, lexicon: Lexicon) -> list[ItemDoc]:
    return [
        build_item_doc(kg, entity.id, lexicon)
        for entity in kg.entities_of_kind(EntityKind.ITEM)
    ]


def score(q: TaggedText, doc: ItemDoc, weights: ScoreWeights | None = None) -> float:
    weights = weights or ScoreWeights()
    q_tokens, d_tokens = set(q.tokens), set(doc.tagged.tokens)
    union = q_tokens | d_tokens
    jaccard = len(q_tokens & d_tokens) / len(union) if union else 0.0
    total = weights.alpha * jaccard
    by_type: dict[str, set[str]] = {}
    for span in q.spans:
        by_type.setdefault(span.semtype, set()).add(span.surface)
    for semtype in sorted(by_type):
        if any((semtype, s) in doc.typed_surfaces for s in by_type[semtype]):
            total += weights.beta(semtype)
    return total


def rank(
    query: str,
    docs: list[ItemDoc],
    lexicon: Lexicon,
    weights: ScoreWeights | None = None,
    k: int = 10,
) -> list[tuple[str, float]]:
    """Score every doc; descending score, ties by item id, zeros dropped."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not docs:
        raise EmptyCatalog("no items to search")
    tagged_query = ner_tag(query, lexicon)
    scored = [(doc.item_id, score(tagged_query, doc, weights)) for doc in docs]
    scored = [pair for pair in scored if pair[1] > 0.0]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return scored[:k]


def search(
    query: str,
    kg: KnowledgeGraph,
    lexicon: Lexicon,
    weights: ScoreWeights | None = None,
    k: int = 10,
) -> list[tuple[str, float]]:
    return rank(query, build_item_docs(kg, lexicon), lexicon, weights, k)
