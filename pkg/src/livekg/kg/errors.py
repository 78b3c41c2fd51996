"""Errors raised by the knowledge graph store."""

from __future__ import annotations


class KgError(Exception):
    """Base class for all graph errors.

    ``line`` is set by the JSONL importer to the 1-based line number of the
    offending record; it is None for errors raised by direct API calls.
    """

    line: int | None = None

    def at_line(self, line: int) -> "KgError":
        err = type(self)(f"line {line}: {self}")
        err.line = line
        return err


class DuplicateId(KgError):
    """An entity with this id is already stored."""


class EmptyLabel(KgError):
    """Entity labels must be non-empty."""


class InvalidEntity(KgError):
    """Entity violates a kind-specific invariant (e.g. image without a file)."""


class UnknownEntity(KgError):
    """Referenced entity id is not in the store."""


class SignatureViolation(KgError):
    """Triple endpoints do not match the relation's (source, target) kinds."""


class AlreadyPresent(KgError):
    """Exact duplicate triple insert (a no-op unless strict mode asks to raise)."""


class ParseError(KgError):
    """A JSONL record could not be parsed or carries unknown fields."""
