"""JSONL persistence for the knowledge graph.

One JSON object per line, UTF-8. Entity records:

    {"rec": "entity", "id": ..., "kind": ..., "label": ...,
     "aliases": [...], "attributes": {...}}

Triple records:

    {"rec": "triple", "source": ..., "relation": ..., "qualifier": ...,
     "target": ..., "provenance": ...}

``qualifier`` may be omitted. Unknown fields are rejected. Import validates
every store invariant and aborts on the first violation, reporting the
1-based line number; entity records may appear after triples that use them.
"""

from __future__ import annotations

import json
from pathlib import Path

from livekg.kg.errors import KgError, ParseError
from livekg.kg.graph import KnowledgeGraph
from livekg.kg.model import Entity, EntityKind, Provenance, RelationKind, Triple

_ENTITY_FIELDS = {"rec", "id", "kind", "label", "aliases", "attributes"}
_TRIPLE_FIELDS = {"rec", "source", "relation", "qualifier", "target", "provenance"}


def _enum_value(enum_cls, raw, line: int, what: str):
    try:
        return enum_cls(raw)
    except ValueError:
        raise ParseError(f"unknown {what} {raw!r}").at_line(line) from None


def _string(record: dict, field: str, line: int) -> str:
    value = record.get(field)
    if not isinstance(value, str):
        raise ParseError(f"field {field!r} must be a string").at_line(line)
    return value


def _parse_entity(record: dict, line: int) -> Entity:
    aliases = record.get("aliases", [])
    if not isinstance(aliases, list) or not all(isinstance(a, str) for a in aliases):
        raise ParseError("field 'aliases' must be a list of strings").at_line(line)
    attributes = record.get("attributes", {})
    if not isinstance(attributes, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in attributes.items()
    ):
        raise ParseError("field 'attributes' must map strings to strings").at_line(line)
    return Entity(
        id=_string(record, "id", line),
        kind=_enum_value(EntityKind, record.get("kind"), line, "entity kind"),
        label=_string(record, "label", line),
        aliases=list(aliases),
        attributes=dict(attributes),
    )


def _parse_triple(record: dict, line: int) -> Triple:
    qualifier = record.get("qualifier")
    if qualifier is not None and not isinstance(qualifier, str):
        raise ParseError("field 'qualifier' must be a string").at_line(line)
    return Triple(
        source=_string(record, "source", line),
        relation=_enum_value(RelationKind, record.get("relation"), line, "relation"),
        target=_string(record, "target", line),
        qualifier=qualifier,
        provenance=_enum_value(Provenance, record.get("provenance"), line, "provenance"),
    )


def import_jsonl(path: str | Path) -> KnowledgeGraph:
    entities: list[tuple[int, Entity]] = []
    triples: list[tuple[int, Triple]] = []

    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                record = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}").at_line(line_no) from None
            if not isinstance(record, dict):
                raise ParseError("record must be a JSON object").at_line(line_no)
            rec = record.get("rec")
            if rec == "entity":
                unknown = set(record) - _ENTITY_FIELDS
                if unknown:
                    raise ParseError(f"unknown fields {sorted(unknown)}").at_line(line_no)
                entities.append((line_no, _parse_entity(record, line_no)))
            elif rec == "triple":
                unknown = set(record) - _TRIPLE_FIELDS
                if unknown:
                    raise ParseError(f"unknown fields {sorted(unknown)}").at_line(line_no)
                triples.append((line_no, _parse_triple(record, line_no)))
            else:
                raise ParseError(f"unknown record type {rec!r}").at_line(line_no)

    kg = KnowledgeGraph()
    for line_no, entity in entities:
        try:
            kg.add_entity(entity)
        except KgError as exc:
            raise exc.at_line(line_no) from None
    for line_no, triple in triples:
        try:
            kg.insert_triple(triple)
        except KgError as exc:
            raise exc.at_line(line_no) from None
    return kg


def export_jsonl(kg: KnowledgeGraph, path: str | Path) -> None:
    """Write the graph with deterministic ordering (entities, then triples,
    each sorted); derived provenance is preserved."""
    lines: list[str] = []
    for entity in sorted(kg.entities(), key=lambda e: e.id):
        lines.append(json.dumps(
            {
                "rec": "entity",
                "id": entity.id,
                "kind": entity.kind.value,
                "label": entity.label,
                "aliases": entity.aliases,
                "attributes": entity.attributes,
            },
            ensure_ascii=False,
        ))
    triples = sorted(
        kg.triples(),
        key=lambda t: (t.source, t.relation.value, t.qualifier or "", t.target),
    )
    for triple in triples:
        record = {
            "rec": "triple",
            "source": triple.source,
            "relation": triple.relation.value,
            "target": triple.target,
            "provenance": triple.provenance.value,
        }
        if triple.qualifier is not None:
            record["qualifier"] = triple.qualifier
        lines.append(json.dumps(record, ensure_ascii=False))
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
