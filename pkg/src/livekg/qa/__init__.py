"""Intent routing, knowledge-based QA, and FAQ fallback."""

from .engine import Engine, EngineConfig, Reply, select_item
from .faq import FaqEntry, FaqStore, TfidfBackend, faq_fallback
from .intent import IntentRules, classify_intent
from .kbqa import DEFAULT_TEMPLATE, answer_property_question
from .types import AnswerPayload, AnswerSource, Intent, Session

__all__ = [
    "AnswerPayload",
    "AnswerSource",
    "DEFAULT_TEMPLATE",
    "Engine",
    "EngineConfig",
    "FaqEntry",
    "FaqStore",
    "Intent",
    "IntentRules",
    "Reply",
    "Session",
    "TfidfBackend",
    "answer_property_question",
    "classify_intent",
    "faq_fallback",
    "select_item",
]
