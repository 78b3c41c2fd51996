"""In-memory knowledge graph with typed triples and secondary indexes.

Mutations (entity/triple inserts, completion) run under a writer lock and
apply in one batch, so concurrent readers never observe a partial fixpoint.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from livekg.kg.errors import (
    DuplicateId,
    EmptyLabel,
    InvalidEntity,
    SignatureViolation,
    UnknownEntity,
)
from livekg.kg.locking import RWLock
from livekg.kg.model import (
    DERIVABLE,
    IMAGE_FILE_ATTR,
    SIGNATURES,
    AddOutcome,
    Entity,
    EntityKind,
    Provenance,
    RelationKind,
    Triple,
)

_REL_ORDER = {rel: i for i, rel in enumerate(RelationKind)}


@dataclass
class KgStats:
    """Exact per-kind tallies; sums match the collection sizes."""

    entities: dict[EntityKind, int] = field(default_factory=dict)
    triples: dict[RelationKind, int] = field(default_factory=dict)
    asserted: int = 0
    derived: int = 0

    @property
    def entity_total(self) -> int:
        return sum(self.entities.values())

    @property
    def triple_total(self) -> int:
        return sum(self.triples.values())


class KnowledgeGraph:
    def __init__(self) -> None:
        self._entities: dict[str, Entity] = {}
        self._triples: list[Triple] = []
        self._by_key: dict[tuple, int] = {}  # triple key -> index in _triples
        self._out: dict[tuple[str, RelationKind], list[Triple]] = defaultdict(list)
        self._in: dict[tuple[str, RelationKind], list[Triple]] = defaultdict(list)
        self._by_kind_label: dict[tuple[EntityKind, str], str] = {}
        self._lock = RWLock()

    # ------------------------------------------------------------------
    # entities

    def add_entity(self, entity: Entity) -> str:
        with self._lock.write():
            return self._add_entity_locked(entity)

    def _add_entity_locked(self, entity: Entity) -> str:
        if not entity.label:
            raise EmptyLabel(f"entity {entity.id!r} has an empty label")
        if entity.id in self._entities:
            raise DuplicateId(f"entity id {entity.id!r} already stored")
        if entity.kind is EntityKind.IMAGE and not entity.attributes.get(IMAGE_FILE_ATTR):
            raise InvalidEntity(
                f"image entity {entity.id!r} must carry a {IMAGE_FILE_ATTR!r} attribute"
            )
        self._entities[entity.id] = entity
        self._by_kind_label[(entity.kind, entity.label)] = entity.id
        return entity.id

    def entity(self, entity_id: str) -> Entity:
        with self._lock.read():
            ent = self._entities.get(entity_id)
        if ent is None:
            raise UnknownEntity(f"no entity with id {entity_id!r}")
        return ent

    def has_entity(self, entity_id: str) -> bool:
        with self._lock.read():
            return entity_id in self._entities

    def find_entity(self, kind: EntityKind, label: str) -> Entity | None:
        with self._lock.read():
            entity_id = self._by_kind_label.get((kind, label))
            return self._entities[entity_id] if entity_id is not None else None

    def entities(self) -> list[Entity]:
        with self._lock.read():
            return list(self._entities.values())

    def entities_of_kind(self, kind: EntityKind) -> list[Entity]:
        with self._lock.read():
            return [e for e in self._entities.values() if e.kind is kind]

    # ------------------------------------------------------------------
    # triples

    def add_triple(self, triple: Triple) -> AddOutcome:
        """Insert an asserted triple; exact duplicates are a reported no-op."""
        if triple.provenance is not Provenance.ASSERTED:
            raise SignatureViolation("add_triple only accepts asserted triples")
        with self._lock.write():
            return self._insert_locked(triple)

    def insert_triple(self, triple: Triple) -> AddOutcome:
        """Validated insert that honors the triple's provenance.

        Used by the importer (round-tripping derived triples) and by
        completion; prefer :meth:`add_triple` for new domain knowledge.
        """
        with self._lock.write():
            return self._insert_locked(triple)

    def _insert_locked(self, triple: Triple) -> AddOutcome:
        source = self._entities.get(triple.source)
        if source is None:
            raise UnknownEntity(f"triple source {triple.source!r} not stored")
        target = self._entities.get(triple.target)
        if target is None:
            raise UnknownEntity(f"triple target {triple.target!r} not stored")
        src_kinds, tgt_kinds = SIGNATURES[triple.relation]
        if source.kind not in src_kinds or target.kind not in tgt_kinds:
            raise SignatureViolation(
                f"{triple.relation.value} cannot link {source.kind.value} "
                f"to {target.kind.value}"
            )
        if triple.provenance is Provenance.DERIVED and triple.relation not in DERIVABLE:
            raise SignatureViolation(
                f"{triple.relation.value} triples cannot be derived"
            )
        idx = self._by_key.get(triple.key)
        if idx is not None:
            stored = self._triples[idx]
            if (
                stored.provenance is Provenance.DERIVED
                and triple.provenance is Provenance.ASSERTED
            ):
                # the edge is now domain knowledge, not just an inference
                upgraded = Triple(
                    triple.source, triple.relation, triple.target,
                    triple.qualifier, Provenance.ASSERTED,
                )
                self._triples[idx] = upgraded
                self._reindex_replaced(stored, upgraded)
            return AddOutcome.ALREADY_PRESENT
        self._by_key[triple.key] = len(self._triples)
        self._triples.append(triple)
        self._out[(triple.source, triple.relation)].append(triple)
        self._in[(triple.target, triple.relation)].append(triple)
        return AddOutcome.ADDED

    def _reindex_replaced(self, old: Triple, new: Triple) -> None:
        out = self._out[(old.source, old.relation)]
        out[out.index(old)] = new
        inc = self._in[(old.target, old.relation)]
        inc[inc.index(old)] = new

    def triples(self) -> list[Triple]:
        with self._lock.read():
            return list(self._triples)

    def has_triple(self, source: str, relation: RelationKind, target: str,
                   qualifier: str | None = None) -> bool:
        with self._lock.read():
            return (source, relation, qualifier, target) in self._by_key

    # ------------------------------------------------------------------
    # queries

    def neighbors(
        self,
        entity_id: str,
        relation: RelationKind | None = None,
        direction: str = "out",
    ) -> list[tuple[Triple, Entity]]:
        """Matching triples with the far-end entity resolved.

        Deterministic order: relation kind (declaration order), then far-end
        id, then qualifier.
        """
        if direction not in ("out", "in"):
            raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")
        with self._lock.read():
            if entity_id not in self._entities:
                raise UnknownEntity(f"no entity with id {entity_id!r}")
            index = self._out if direction == "out" else self._in
            relations = [relation] if relation is not None else list(RelationKind)
            found: list[tuple[Triple, Entity]] = []
            for rel in relations:
                for triple in index.get((entity_id, rel), ()):
                    far = triple.target if direction == "out" else triple.source
                    found.append((triple, self._entities[far]))
            found.sort(
                key=lambda pair: (
                    _REL_ORDER[pair[0].relation],
                    pair[1].id,
                    pair[0].qualifier or "",
                )
            )
            return found

    def cognitive_paths(self, item_id: str) -> list[list[str]]:
        """All Scenario -cause-> Problem -need-> POI <-satisfy- PropertyValue
        <-has_property- Item chains ending at the item.

        Paths are returned as 5 entity ids in chain order, sorted
        lexicographically; empty list when the item has no complete chain.
        """
        with self._lock.read():
            if item_id not in self._entities:
                raise UnknownEntity(f"no entity with id {item_id!r}")
            paths: list[list[str]] = []
            for prop in self._out.get((item_id, RelationKind.HAS_PROPERTY), ()):
                pv = prop.target
                for sat in self._out.get((pv, RelationKind.SATISFY), ()):
                    poi = sat.target
                    for need in self._in.get((poi, RelationKind.NEED), ()):
                        problem = need.source
                        for cause in self._in.get((problem, RelationKind.CAUSE), ()):
                            paths.append([cause.source, problem, poi, pv, item_id])
            paths.sort()
            # distinct property names can repeat the same (pv, poi) hop
            deduped: list[list[str]] = []
            for path in paths:
                if not deduped or deduped[-1] != path:
                    deduped.append(path)
            return deduped

    def stats(self) -> KgStats:
        with self._lock.read():
            stats = KgStats(
                entities={kind: 0 for kind in EntityKind},
                triples={rel: 0 for rel in RelationKind},
            )
            for ent in self._entities.values():
                stats.entities[ent.kind] += 1
            for triple in self._triples:
                stats.triples[triple.relation] += 1
                if triple.provenance is Provenance.ASSERTED:
                    stats.asserted += 1
                else:
                    stats.derived += 1
            return stats

    # ------------------------------------------------------------------
    # completion

    def run_completion(self) -> int:
        """Materialize rule consequences to fixpoint; returns triples added.

        R1: (Item, has_property:p, PV) and (PV, satisfy, POI)
            adds (Item, has_poi, POI).
        R2: (User, has_problem, Pr) and (Pr, need, POI)
            adds (User, prefer, POI).

        Derived triples never duplicate stored ones, so re-running adds 0.
        The batch is computed and applied under the writer lock.
        """
        with self._lock.write():
            added = 0
            while True:
                fresh = self._completion_round()
                if not fresh:
                    return added
                for triple in fresh:
                    self._insert_locked(triple)
                added += len(fresh)

    def _completion_round(self) -> list[Triple]:
        candidates: dict[tuple, Triple] = {}

        def consider(source: str, relation: RelationKind, target: str) -> None:
            triple = Triple(source, relation, target, provenance=Provenance.DERIVED)
            if triple.key not in self._by_key:
                candidates.setdefault(triple.key, triple)

        for triple in self._triples:
            if triple.relation is RelationKind.HAS_PROPERTY:
                for sat in self._out.get((triple.target, RelationKind.SATISFY), ()):
                    consider(triple.source, RelationKind.HAS_POI, sat.target)
            elif triple.relation is RelationKind.HAS_PROBLEM:
                for need in self._out.get((triple.target, RelationKind.NEED), ()):
                    consider(triple.source, RelationKind.PREFER, need.target)
        return list(candidates.values())
