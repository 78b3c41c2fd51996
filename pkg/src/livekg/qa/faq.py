"""FAQ matching with a term-vector cosine backend.

The backend protocol is one method, ``similarities(query)``, so a learned
encoder can be swapped in by configuration without touching the store.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Protocol, Sequence

from ..text import tokenize
from .types import AnswerPayload, AnswerSource


@dataclass(frozen=True)
class FaqEntry:
    question: str
    answer: str

    def __post_init__(self) -> None:
        if not self.question or not self.answer:
            raise ValueError("FAQ question and answer must be non-empty")


class SimilarityBackend(Protocol):
    def similarities(self, query: str) -> list[float]: ...


class TfidfBackend:
    """Cosine over tf-idf vectors of the stored questions.

    idf is smoothed, ln((1 + n) / (1 + df)) + 1, so no term weight is ever
    zero and a query identical to a stored question scores exactly 1.
    """

    def __init__(self, questions: Sequence[str]) -> None:
        self._idf: dict[str, float] = {}
        docs = [tokenize(q) for q in questions]
        n = len(docs)
        df: dict[str, int] = {}
        for tokens in docs:
            for term in set(tokens):
                df[term] = df.get(term, 0) + 1
        for term, count in df.items():
            self._idf[term] = math.log((1 + n) / (1 + count)) + 1
        self._vectors = [self._vector(tokens) for tokens in docs]

    def _vector(self, tokens: list[str]) -> dict[str, float]:
        weights: dict[str, float] = {}
        for term in tokens:
            idf = self._idf.get(term)
            if idf is None:
                continue
            weights[term] = weights.get(term, 0.0) + idf
        norm = math.sqrt(sum(w * w for w in weights.values()))
        if norm > 0:
            weights = {t: w / norm for t, w in weights.items()}
        return weights

    def similarities(self, query: str) -> list[float]:
        # equal vectors score exactly 1, not 1 minus rounding noise, so an
        # identical question always clears any theta <= 1
        qv = self._vector(tokenize(query))
        return [
            1.0 if qv and qv == dv
            else sum(w * dv.get(t, 0.0) for t, w in qv.items())
            for dv in self._vectors
        ]


class FaqStore:
    def __init__(
        self,
        entries: Sequence[FaqEntry],
        backend_factory: Callable[[Sequence[str]], SimilarityBackend] = TfidfBackend,
    ) -> None:
        self.entries = list(entries)
        self._backend = backend_factory([e.question for e in self.entries])

    @classmethod
    def load(cls, path: str | Path, **kwargs) -> "FaqStore":
        """Read JSONL lines of {"q": ..., "a": ...}."""
        entries = []
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    entries.append(FaqEntry(record["q"], record["a"]))
                except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                    raise ValueError(f"line {line_no}: bad FAQ record: {exc}") from None
        return cls(entries, **kwargs)

    def __len__(self) -> int:
        return len(self.entries)

    def match(self, query: str) -> tuple[FaqEntry, float] | None:
        """Best entry by similarity; earliest entry wins ties. None if empty."""
        if not self.entries:
            return None
        sims = self._backend.similarities(query)
        best = max(range(len(sims)), key=lambda i: (sims[i], -i))
        return self.entries[best], sims[best]


def faq_fallback(
    query: str,
    store: FaqStore,
    theta: float,
    default_reply: str,
    trace: list[str] | None = None,
) -> AnswerPayload:
    """The matched FAQ answer when similarity reaches theta, else the
    pre-configured reply."""
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must be in [0, 1], got {theta}")
    found = store.match(query)
    if found is not None:
        entry, similarity = found
        if similarity >= theta:
            if trace is not None:
                trace.append("faq:hit")
            return AnswerPayload(entry.answer, (), AnswerSource.FAQ)
    if trace is not None:
        trace.append("faq:fallback")
    return AnswerPayload(default_reply, (), AnswerSource.FALLBACK)
