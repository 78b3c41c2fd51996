"""Query routing: one entry point covering the whole intent flow."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..kg import EntityKind, KnowledgeGraph, UnknownEntity
from ..retrieval import EmptyCatalog, Lexicon, ScoreWeights, build_item_docs, rank
from .faq import FaqStore, faq_fallback
from .intent import IntentRules, classify_intent
from .kbqa import answer_property_question
from .types import AnswerPayload, AnswerSource, Intent, Session

DEFAULT_REPLY = "抱歉，这个问题我还回答不了。"


@dataclass(frozen=True)
class EngineConfig:
    rules: IntentRules = field(default_factory=IntentRules)
    weights: ScoreWeights = field(default_factory=ScoreWeights)
    theta: float = 0.3
    default_reply: str = DEFAULT_REPLY
    top_k: int = 10


@dataclass(frozen=True)
class Reply:
    intent: Intent
    payload: dict

    def as_dict(self) -> dict:
        return {"intent": self.intent.value, "payload": self.payload}


def select_item(session: Session, item_id: str, kg: KnowledgeGraph) -> None:
    """Set the session's current item, validating it first."""
    entity = kg.entity(item_id)
    if entity.kind is not EntityKind.ITEM:
        raise UnknownEntity(f"{item_id!r} is {entity.kind.value}, not an item")
    session.current_item = item_id


class Engine:
    """Routes queries over immutable stores; sessions carry all mutable state.

    Item docs are built once at construction, so queries never re-scan the
    graph for profile text.
    """

    def __init__(
        self,
        kg: KnowledgeGraph,
        search_lexicon: Lexicon,
        property_lexicon: Lexicon,
        faq_store: FaqStore,
        templates: Mapping[str, str] | None = None,
        config: EngineConfig | None = None,
    ) -> None:
        self.kg = kg
        self.search_lexicon = search_lexicon
        self.property_lexicon = property_lexicon
        self.faq_store = faq_store
        self.templates = dict(templates or {})
        self.config = config or EngineConfig()
        self._docs = build_item_docs(kg, search_lexicon)

    def classify_intent(self, query: str, session: Session) -> Intent:
        return classify_intent(
            query, session, self.kg, self.search_lexicon,
            self.property_lexicon, self.config.rules,
        )

    def kbqa(self, query: str, item_id: str,
             trace: list[str] | None = None) -> AnswerPayload | None:
        return answer_property_question(
            query, item_id, self.kg, self.property_lexicon,
            self.templates, trace,
        )

    def search(self, query: str, k: int | None = None) -> list[tuple[str, float]]:
        return rank(
            query, self._docs, self.search_lexicon,
            self.config.weights, self.config.top_k if k is None else k,
        )

    def select_item(self, session: Session, item_id: str) -> None:
        select_item(session, item_id, self.kg)

    def handle(self, query: str, session: Session,
               trace: list[str] | None = None) -> Reply:
        """Classify, route, and answer; exactly one reply per query."""
        intent = self.classify_intent(query, session)
        if trace is not None:
            trace.append(f"intent:{intent.value}")
        if intent is Intent.VIEW_ITEM:
            try:
                ranked = self.search(query)
            except EmptyCatalog:
                ranked = []
            session.last_ranking = ranked
            if trace is not None:
                trace.append(f"search:{len(ranked)}")
            items = [
                {"id": item_id, "label": self.kg.entity(item_id).label,
                 "score": score}
                for item_id, score in ranked
            ]
            return Reply(intent, {"items": items})
        if intent is Intent.ITEM_QUESTION:
            answer = self.kbqa(query, session.current_item, trace)
            if answer is not None:
                if trace is not None:
                    trace.append("kbqa:hit")
                return Reply(intent, answer.as_dict())
            if trace is not None:
                trace.append("kbqa:miss")
            answer = faq_fallback(
                query, self.faq_store, self.config.theta,
                self.config.default_reply, trace,
            )
            return Reply(intent, answer.as_dict())
        answer = AnswerPayload(self.config.default_reply, (), AnswerSource.FALLBACK)
        return Reply(intent, answer.as_dict())
