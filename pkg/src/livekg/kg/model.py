"""Core graph vocabulary: entity kinds, relation kinds and their signatures.

The ontology is closed: seven entity kinds and eight relation kinds, each
relation with a fixed (source kind, target kind) signature. ``has_image``
accepts any non-Image source so scenarios, problems, POIs, property values
and items can all carry illustrations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class EntityKind(str, Enum):
    USER = "User"
    ITEM = "Item"
    SCENARIO = "Scenario"
    PROBLEM = "Problem"
    POI = "POI"
    PROPERTY_VALUE = "PropertyValue"
    IMAGE = "Image"


class RelationKind(str, Enum):
    CAUSE = "cause"
    NEED = "need"
    SATISFY = "satisfy"
    HAS_PROPERTY = "has_property"
    HAS_IMAGE = "has_image"
    HAS_PROBLEM = "has_problem"
    HAS_POI = "has_poi"
    PREFER = "prefer"


class Provenance(str, Enum):
    ASSERTED = "asserted"
    DERIVED = "derived"


class AddOutcome(str, Enum):
    """Result of a triple insert: stored, or already there (no-op)."""

    ADDED = "added"
    ALREADY_PRESENT = "already_present"


_ANY_NON_IMAGE = frozenset(EntityKind) - {EntityKind.IMAGE}

# relation -> (allowed source kinds, allowed target kinds)
SIGNATURES: dict[RelationKind, tuple[frozenset[EntityKind], frozenset[EntityKind]]] = {
    RelationKind.CAUSE: (frozenset({EntityKind.SCENARIO}), frozenset({EntityKind.PROBLEM})),
    RelationKind.NEED: (frozenset({EntityKind.PROBLEM}), frozenset({EntityKind.POI})),
    RelationKind.SATISFY: (frozenset({EntityKind.PROPERTY_VALUE}), frozenset({EntityKind.POI})),
    RelationKind.HAS_PROPERTY: (frozenset({EntityKind.ITEM}), frozenset({EntityKind.PROPERTY_VALUE})),
    RelationKind.HAS_IMAGE: (_ANY_NON_IMAGE, frozenset({EntityKind.IMAGE})),
    RelationKind.HAS_PROBLEM: (frozenset({EntityKind.USER}), frozenset({EntityKind.PROBLEM})),
    RelationKind.HAS_POI: (frozenset({EntityKind.ITEM}), frozenset({EntityKind.POI})),
    RelationKind.PREFER: (frozenset({EntityKind.USER}), frozenset({EntityKind.POI})),
}

# only these relations may carry derived provenance
DERIVABLE: frozenset[RelationKind] = frozenset({RelationKind.HAS_POI, RelationKind.PREFER})

# attribute key that locates an Image entity's raster file
IMAGE_FILE_ATTR = "file"


@dataclass
class Entity:
    """A typed node. ``attributes`` holds open scalar metadata, e.g. the
    raster path of an Image or comment snippets on an Item."""

    id: str
    kind: EntityKind
    label: str
    aliases: list[str] = field(default_factory=list)
    attributes: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class Triple:
    """A directed edge. ``qualifier`` names the property for has_property
    edges ("ingredient", "尺码", ...) and is None elsewhere."""

    source: str
    relation: RelationKind
    target: str
    qualifier: str | None = None
    provenance: Provenance = Provenance.ASSERTED

    @property
    def key(self) -> tuple[str, RelationKind, str | None, str]:
        """Identity used for duplicate detection (provenance excluded)."""
        return (self.source, self.relation, self.qualifier, self.target)
