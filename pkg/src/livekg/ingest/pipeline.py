"""Cutting, noise filtering and pair building for detail-page images.

Long detail-page images stack content blocks vertically, so the cutter
looks for runs of visually-quiet rows (low vertical gradient) and splits
in the middle of each run. Pieces always tile the source rows exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from livekg.ingest.ocr import OcrBlock
from livekg.ingest.raster import RawImage


class DegenerateImage(Exception):
    """Image too small for row-energy analysis (height < 2)."""


@dataclass(frozen=True)
class CutParams:
    aspect_trigger: float = 3.0       # cut only if height/width exceeds this
    gap_energy_threshold: float = 2.0  # rows quieter than this are gap rows
    min_gap_rows: int = 8
    min_segment_height: int = 32

    def __post_init__(self):
        if min(self.aspect_trigger, self.gap_energy_threshold) <= 0:
            raise ValueError("cut thresholds must be positive")
        if self.min_gap_rows < 1 or self.min_segment_height < 1:
            raise ValueError("row counts must be >= 1")


@dataclass(frozen=True)
class FilterParams:
    max_text_area_ratio: float = 0.5
    max_block_count: int = 10
    banned_phrases: tuple[str, ...] = ()

    def __post_init__(self):
        if not 0.0 <= self.max_text_area_ratio <= 1.0:
            raise ValueError("max_text_area_ratio must be in [0, 1]")
        if self.max_block_count < 0:
            raise ValueError("max_block_count must be >= 0")


@dataclass(frozen=True)
class Verdict:
    kept: bool
    reason: str | None = None

    @classmethod
    def keep(cls) -> "Verdict":
        return cls(True)

    @classmethod
    def drop(cls, reason: str) -> "Verdict":
        return cls(False, reason)


@dataclass(frozen=True)
class ImagePiece:
    image: RawImage
    source_row_range: tuple[int, int]  # [start, end) in the original image
    ocr: tuple[OcrBlock, ...] = ()     # bboxes re-offset to piece coordinates
    verdict: Verdict | None = None     # set by filter_noise


def row_energy(img: RawImage) -> list[float]:
    """Mean absolute vertical gradient per row.

    value[r] averages |pixel(r+1, c, ch) - pixel(r, c, ch)| over all columns
    and channels; the last row repeats the previous value so the list length
    equals the image height. Integer sums with a single final division keep
    the result bit-identical to a naive per-pixel recomputation.
    """
    if img.height < 2:
        raise DegenerateImage("row energy needs height >= 2")
    arr = img.to_array().astype(np.int64)
    row_sums = np.abs(arr[1:] - arr[:-1]).sum(axis=(1, 2))
    denom = img.width * img.channels
    values = [int(s) / denom for s in row_sums]
    values.append(values[-1])
    return values


def _gap_runs(energy: list[float], threshold: float, min_rows: int) -> list[tuple[int, int]]:
    """Maximal runs [start, end) of >= min_rows consecutive quiet rows."""
    runs: list[tuple[int, int]] = []
    start = None
    for r, e in enumerate(energy):
        if e < threshold:
            if start is None:
                start = r
        elif start is not None:
            if r - start >= min_rows:
                runs.append((start, r))
            start = None
    if start is not None and len(energy) - start >= min_rows:
        runs.append((start, len(energy)))
    return runs


def _assign_blocks(
    blocks: list[OcrBlock] | tuple[OcrBlock, ...],
    segments: list[tuple[int, int]],
) -> list[list[OcrBlock]]:
    """Re-offset each block into the segment with the largest row overlap.

    Blocks fully inside a segment keep their exact shape; a block straddling
    a cut (rare, cuts fall in visually-quiet rows) is clipped to the winning
    segment so piece-local bboxes always stay within piece bounds.
    """
    per_segment: list[list[OcrBlock]] = [[] for _ in segments]
    for block in blocks:
        best, best_overlap = None, 0
        for idx, (a, b) in enumerate(segments):
            overlap = min(b, block.y + block.h) - max(a, block.y)
            if overlap > best_overlap:
                best, best_overlap = idx, overlap
        if best is None:
            continue
        a, b = segments[best]
        y0 = max(block.y, a)
        y1 = min(block.y + block.h, b)
        per_segment[best].append(
            OcrBlock(block.x, y0 - a, block.w, y1 - y0, block.text)
        )
    return per_segment


def cut_long_image(
    img: RawImage,
    params: CutParams,
    ocr: list[OcrBlock] | tuple[OcrBlock, ...] = (),
) -> list[ImagePiece]:
    """Split an overlong image at the middle of each quiet-row gap.

    Images with height/width <= aspect_trigger come back whole. Segments
    shorter than min_segment_height are merged into their predecessor (the
    first into its successor), so the pieces tile [0, height) exactly,
    top to bottom.
    """
    if img.height / img.width <= params.aspect_trigger:
        segments = [(0, img.height)]
    else:
        energy = row_energy(img)
        cuts = []
        for start, end in _gap_runs(energy, params.gap_energy_threshold,
                                    params.min_gap_rows):
            cut = start + (end - start) // 2
            if 0 < cut < img.height:
                cuts.append(cut)
        bounds = [0] + sorted(set(cuts)) + [img.height]
        segments = []
        for a, b in zip(bounds, bounds[1:]):
            if segments and b - a < params.min_segment_height:
                segments[-1] = (segments[-1][0], b)
            else:
                segments.append((a, b))
        if len(segments) > 1 and segments[0][1] - segments[0][0] < params.min_segment_height:
            merged = (segments[0][0], segments[1][1])
            segments = [merged] + segments[2:]

    per_segment_ocr = _assign_blocks(ocr, segments)
    return [
        ImagePiece(
            image=img.crop_rows(a, b),
            source_row_range=(a, b),
            ocr=tuple(blocks),
        )
        for (a, b), blocks in zip(segments, per_segment_ocr)
    ]


def filter_noise(piece: ImagePiece, params: FilterParams) -> ImagePiece:
    """Apply the noise heuristics in fixed order; first failure wins.

    1. total OCR area proportion over max_text_area_ratio -> "text_area"
    2. more blocks than max_block_count -> "block_count"
    3. any block containing a banned phrase -> "banned_phrase"
    """
    piece_area = piece.image.width * piece.image.height
    text_area = sum(b.area for b in piece.ocr)
    if text_area / piece_area > params.max_text_area_ratio:
        return replace(piece, verdict=Verdict.drop("text_area"))
    if len(piece.ocr) > params.max_block_count:
        return replace(piece, verdict=Verdict.drop("block_count"))
    for block in piece.ocr:
        for phrase in params.banned_phrases:
            if phrase in block.text:
                return replace(piece, verdict=Verdict.drop("banned_phrase"))
    return replace(piece, verdict=Verdict.keep())


def piece_sentence(piece: ImagePiece) -> str:
    """OCR texts joined in reading order: top-to-bottom, then left-to-right."""
    blocks = sorted(piece.ocr, key=lambda b: (b.y, b.x))
    return " ".join(b.text for b in blocks)


def build_pairs(pieces: list[ImagePiece]) -> list[tuple[RawImage, str]]:
    """(image, sentence) pairs from kept pieces, skipping OCR-less pieces."""
    pairs: list[tuple[RawImage, str]] = []
    for piece in pieces:
        if piece.verdict is not None and not piece.verdict.kept:
            continue
        if not piece.ocr:
            continue
        pairs.append((piece.image, piece_sentence(piece)))
    return pairs
