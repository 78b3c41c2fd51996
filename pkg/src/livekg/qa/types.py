from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Intent(str, Enum):
    VIEW_ITEM = "ViewItem"
    ITEM_QUESTION = "ItemQuestion"
    OUT_OF_SCOPE = "OutOfScope"


class AnswerSource(str, Enum):
    KBQA = "kbqa"
    FAQ = "faq"
    FALLBACK = "fallback"


@dataclass(frozen=True)
class AnswerPayload:
    """A textual answer with optional attached image entity ids."""

    text: str
    images: tuple[str, ...] = ()
    source: AnswerSource = AnswerSource.FALLBACK

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("answer text must be non-empty")

    def as_dict(self) -> dict:
        return {
            "text": self.text,
            "images": list(self.images),
            "source": self.source.value,
        }


@dataclass
class Session:
    """Per-conversation state: the chosen item and the last search result."""

    session_id: str
    current_item: str | None = None
    last_ranking: list[tuple[str, float]] = field(default_factory=list)
