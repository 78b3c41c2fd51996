"""Short-video storyboards that walk a scenario-to-item cognitive path.

Each of the five path nodes becomes one frame: a templated utterance plus
the node's linked images. Rendering the frames into actual video is left to
consumers of the JSON shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .kg import EntityKind, KnowledgeGraph, RelationKind

# every template may reference any of the five path labels
DEFAULT_TEMPLATES: dict[EntityKind, str] = {
    EntityKind.SCENARIO: "{scenario}容易导致{problem}",
    EntityKind.PROBLEM: "{problem}的困扰，需要{poi}",
    EntityKind.POI: "想要{poi}，看准{pv}",
    EntityKind.PROPERTY_VALUE: "{pv}，帮你实现{poi}",
    EntityKind.ITEM: "{item}，让{poi}成为日常",
}

PATH_KINDS = (
    EntityKind.SCENARIO,
    EntityKind.PROBLEM,
    EntityKind.POI,
    EntityKind.PROPERTY_VALUE,
    EntityKind.ITEM,
)


class NoPath(LookupError):
    """The item has no complete scenario-to-item chain."""


@dataclass(frozen=True)
class Frame:
    node: str
    kind: EntityKind
    utterance: str
    images: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "node": self.node,
            "kind": self.kind.value,
            "utterance": self.utterance,
            "images": list(self.images),
        }


@dataclass(frozen=True)
class Storyboard:
    item: str
    frames: tuple[Frame, ...]

    def as_dict(self) -> dict:
        return {"item": self.item, "frames": [f.as_dict() for f in self.frames]}


def first_path(paths: list[list[str]]) -> list[str]:
    """Default selector: cognitive_paths orders lexicographically."""
    return paths[0]


def generate_storyboard(
    kg: KnowledgeGraph,
    item_id: str,
    templates: Mapping[EntityKind, str] | None = None,
    selector: Callable[[list[list[str]]], list[str]] = first_path,
) -> Storyboard:
    paths = kg.cognitive_paths(item_id)
    if not paths:
        raise NoPath(f"item {item_id!r} has no complete cognitive path")
    path = selector(paths)
    templates = dict(templates) if templates else DEFAULT_TEMPLATES
    labels = {
        "scenario": kg.entity(path[0]).label,
        "problem": kg.entity(path[1]).label,
        "poi": kg.entity(path[2]).label,
        "pv": kg.entity(path[3]).label,
        "item": kg.entity(path[4]).label,
    }
    frames = []
    for node_id, kind in zip(path, PATH_KINDS):
        template = templates.get(kind) or DEFAULT_TEMPLATES[kind]
        utterance = template.format(**labels)
        images = tuple(
            image.id for _, image in kg.neighbors(node_id, RelationKind.HAS_IMAGE)
        )
        frames.append(Frame(node_id, kind, utterance, images))
    return Storyboard(item_id, tuple(frames))
