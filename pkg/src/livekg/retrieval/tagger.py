"""Dictionary tagger: greedy left-to-right maximal munch over token n-grams."""

from __future__ import annotations

from dataclasses import dataclass

from ..text import tokenize
from .lexicon import Lexicon


@dataclass(frozen=True)
class Span:
    """A lexicon match over tokens [start, end)."""

    start: int
    end: int
    surface: str
    semtype: str


@dataclass(frozen=True)
class TaggedText:
    tokens: tuple[str, ...]
    spans: tuple[Span, ...]

    def surfaces_of_type(self, semtype: str) -> set[str]:
        return {s.surface for s in self.spans if s.semtype == semtype}

    def has_type(self, semtype: str) -> bool:
        return any(s.semtype == semtype for s in self.spans)


def ner_tag(text: str, lexicon: Lexicon) -> TaggedText:
    """Tag lexicon surfaces in ``text``.

    Scans left to right; at each position the longest matching n-gram wins
    and scanning resumes after it, so spans never overlap.
    """
    tokens = tuple(tokenize(text))
    spans: list[Span] = []
    limit = lexicon.max_ngram
    i = 0
    while i < len(tokens):
        matched = None
        for length in range(min(limit, len(tokens) - i), 0, -1):
            found = lexicon.lookup(tokens[i:i + length])
            if found is not None:
                matched = (length, found)
                break
        if matched is None:
            i += 1
            continue
        length, (surface, semtype) = matched
        spans.append(Span(i, i + length, surface, semtype))
        i += length
    return TaggedText(tokens, tuple(spans))
