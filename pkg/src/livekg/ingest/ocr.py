"""OCR text blocks arrive as JSON sidecars; no OCR runs here."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class OcrBlock:
    """A positioned text block; bbox is (x, y, w, h) in source-image pixels."""

    x: int
    y: int
    w: int
    h: int
    text: str

    def __post_init__(self):
        if self.w < 1 or self.h < 1:
            raise ValueError("OCR bbox must have positive width and height")
        if not self.text:
            raise ValueError("OCR block text must be non-empty")

    @property
    def area(self) -> int:
        return self.w * self.h


def sidecar_path(image_path: str | Path) -> Path:
    return Path(str(image_path) + ".ocr.json")


def load_ocr_sidecar(image_path: str | Path) -> list[OcrBlock]:
    """Blocks for an image from ``<image>.ocr.json``; [] when absent."""
    path = sidecar_path(image_path)
    if not path.exists():
        return []
    payload = json.loads(path.read_text(encoding="utf-8"))
    return [
        OcrBlock(b["x"], b["y"], b["w"], b["h"], b["text"])
        for b in payload.get("blocks", [])
    ]
