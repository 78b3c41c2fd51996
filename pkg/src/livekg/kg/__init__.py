"""Ontology-typed triple store with rule-based completion and persistence."""

from livekg.kg.model import (
    AddOutcome,
    Entity,
    EntityKind,
    IMAGE_FILE_ATTR,
    Provenance,
    RelationKind,
    Triple,
)
from livekg.kg.errors import (
    AlreadyPresent,
    DuplicateId,
    EmptyLabel,
    InvalidEntity,
    KgError,
    ParseError,
    SignatureViolation,
    UnknownEntity,
)
from livekg.kg.graph import KgStats, KnowledgeGraph
from livekg.kg.jsonl import export_jsonl, import_jsonl

__all__ = [
    "AddOutcome",
    "AlreadyPresent",
    "DuplicateId",
    "EmptyLabel",
    "Entity",
    "EntityKind",
    "IMAGE_FILE_ATTR",
    "InvalidEntity",
    "KgError",
    "KgStats",
    "KnowledgeGraph",
    "ParseError",
    "Provenance",
    "RelationKind",
    "SignatureViolation",
    "Triple",
    "UnknownEntity",
    "export_jsonl",
    "import_jsonl",
]
