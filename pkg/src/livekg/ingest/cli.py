"""Pipeline CLI: cut and filter a directory of images, emit training pairs.

    ingest --images DIR --params params.json --out pairs.jsonl

Kept pieces are written as PGM/PPM next to the output file; each piece with
OCR text produces one {"image": ..., "text": ...} line, image paths relative
to the output file's directory.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from livekg.ingest.ocr import load_ocr_sidecar
from livekg.ingest.pipeline import (
    CutParams,
    FilterParams,
    cut_long_image,
    filter_noise,
    piece_sentence,
)
from livekg.ingest.raster import raster_extension, read_raster, write_raster


def load_params(path: str | None) -> tuple[CutParams, FilterParams]:
    if path is None:
        return CutParams(), FilterParams()
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    cut_cfg = payload.get("cut", {})
    filter_cfg = dict(payload.get("filter", {}))
    if "banned_phrases" in filter_cfg:
        filter_cfg["banned_phrases"] = tuple(filter_cfg["banned_phrases"])
    return CutParams(**cut_cfg), FilterParams(**filter_cfg)


def run(images_dir: Path, params_path: str | None, out_path: Path) -> int:
    cut_params, filter_params = load_params(params_path)
    out_dir = out_path.parent
    out_dir.mkdir(parents=True, exist_ok=True)

    image_paths = sorted(
        p for p in images_dir.iterdir() if p.suffix in (".pgm", ".ppm")
    )
    emitted = 0
    with open(out_path, "w", encoding="utf-8") as out:
        for image_path in image_paths:
            img = read_raster(image_path)
            blocks = load_ocr_sidecar(image_path)
            pieces = cut_long_image(img, cut_params, blocks)
            for idx, piece in enumerate(pieces):
                piece = filter_noise(piece, filter_params)
                if not piece.verdict.kept:
                    continue
                name = f"{image_path.stem}.p{idx:02d}{raster_extension(piece.image)}"
                write_raster(piece.image, out_dir / name)
                if not piece.ocr:
                    continue
                out.write(json.dumps(
                    {"image": name, "text": piece_sentence(piece)},
                    ensure_ascii=False,
                ) + "\n")
                emitted += 1
    return emitted


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ingest",
        description="Cut and filter detail-page images into training pairs",
    )
    parser.add_argument("--images", required=True, help="directory of PGM/PPM images")
    parser.add_argument("--params", default=None, help="JSON cut/filter parameters")
    parser.add_argument("--out", required=True, help="output pairs.jsonl path")
    args = parser.parse_args(argv)

    images_dir = Path(args.images)
    if not images_dir.is_dir():
        parser.error(f"--images {args.images!r} is not a directory")
    emitted = run(images_dir, args.params, Path(args.out))
    print(f"wrote {emitted} pairs to {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
