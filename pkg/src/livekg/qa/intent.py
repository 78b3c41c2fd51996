"""Three-way intent classification by a deterministic rule cascade."""

from __future__ import annotations

from dataclasses import dataclass

from ..kg import EntityKind, KnowledgeGraph
from ..retrieval import Lexicon, ner_tag
from .types import Intent, Session

# semantic types that signal a view-item request when tagged in the query
VIEW_SPAN_TYPES = frozenset({"category", "brand"})


@dataclass(frozen=True)
class IntentRules:
    view_triggers: tuple[str, ...] = ("看看", "看", "show")
    question_markers: tuple[str, ...] = ("吗", "?", "？", "多大", "什么")


def _mentions_item(query: str, kg: KnowledgeGraph) -> bool:
    folded = query.casefold()
    for item in kg.entities_of_kind(EntityKind.ITEM):
        for name in (item.label, *item.aliases):
            if name and name.casefold() in folded:
                return True
    return False


def classify_intent(
    query: str,
    session: Session,
    kg: KnowledgeGraph,
    search_lexicon: Lexicon,
    property_lexicon: Lexicon,
    rules: IntentRules | None = None,
) -> Intent:
    """First matching rule wins:

    1. ViewItem: a view trigger plus a category/brand span or item mention.
    2. ItemQuestion: an item is selected and the query carries a property
       span or a question marker.
    3. OutOfScope.
    """
    rules = rules or IntentRules()
    folded = query.casefold()
    if any(t.casefold() in folded for t in rules.view_triggers):
        tagged = ner_tag(query, search_lexicon)
        if any(s.semtype in VIEW_SPAN_TYPES for s in tagged.spans):
            return Intent.VIEW_ITEM
        if _mentions_item(query, kg):
            return Intent.VIEW_ITEM
    if session.current_item is not None:
        if ner_tag(query, property_lexicon).spans:
            return Intent.ITEM_QUESTION
        if any(m.casefold() in folded for m in rules.question_markers):
            return Intent.ITEM_QUESTION
    return Intent.OUT_OF_SCOPE
