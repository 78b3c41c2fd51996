"""Surface-form lexicon mapping phrases to semantic types.

Matching happens at token level, so each surface is stored under its token
sequence. Re-loading a surface replaces the earlier entry and logs the
replacement.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from pathlib import Path

from ..text import tokenize

log = logging.getLogger(__name__)

# conventional starter types; callers may introduce new ones freely
SEED_TYPES = ("category", "brand", "functionality", "color", "size")


class LexiconError(ValueError):
    """A surface or lexicon file that cannot be used."""


class Lexicon:
    def __init__(self, entries: Iterable[tuple[str, str]] = ()) -> None:
        self._surfaces: dict[str, str] = {}
        self._by_tokens: dict[tuple[str, ...], tuple[str, str]] = {}
        self._max_ngram = 0
        for surface, semtype in entries:
            self.add(surface, semtype)

    def add(self, surface: str, semtype: str) -> None:
        surface = surface.strip()
        semtype = semtype.strip()
        if not surface:
            raise LexiconError("empty surface form")
        if not semtype:
            raise LexiconError(f"empty semantic type for surface {surface!r}")
        tokens = tuple(tokenize(surface))
        if not tokens:
            raise LexiconError(f"surface {surface!r} yields no tokens")
        if surface in self._surfaces:
            log.warning(
                "lexicon surface %r reloaded: %s replaces %s",
                surface, semtype, self._surfaces[surface],
            )
        self._surfaces[surface] = semtype
        self._by_tokens[tokens] = (surface, semtype)
        self._max_ngram = max(self._max_ngram, len(tokens))

    @classmethod
    def load(cls, path: str | Path) -> "Lexicon":
        """Read a TSV file of ``surface<TAB>type`` lines.

        Blank lines and ``#`` comment lines are skipped.
        """
        lex = cls()
        with open(path, encoding="utf-8") as fh:
            for line_no, raw in enumerate(fh, start=1):
                line = raw.rstrip("\n")
                if not line.strip() or line.lstrip().startswith("#"):
                    continue
                if "\t" not in line:
                    raise LexiconError(f"line {line_no}: expected surface<TAB>type")
                surface, _, semtype = line.partition("\t")
                try:
                    lex.add(surface, semtype)
                except LexiconError as exc:
                    raise LexiconError(f"line {line_no}: {exc}") from None
        return lex

    def lookup(self, tokens: tuple[str, ...]) -> tuple[str, str] | None:
        """(canonical surface, semantic type) for a token n-gram, or None."""
        return self._by_tokens.get(tokens)

    def type_of(self, surface: str) -> str | None:
        return self._surfaces.get(surface)

    @property
    def max_ngram(self) -> int:
        return self._max_ngram

    def types(self) -> set[str]:
        return set(self._surfaces.values())

    def __len__(self) -> int:
        return len(self._surfaces)

    def __contains__(self, surface: str) -> bool:
        return surface in self._surfaces
