"""Detail-page image pipeline: cut overlong images, filter noise, emit pairs."""

from livekg.ingest.raster import RawImage, RasterFormatError, read_raster, write_raster
from livekg.ingest.ocr import OcrBlock, load_ocr_sidecar
from livekg.ingest.pipeline import (
    CutParams,
    DegenerateImage,
    FilterParams,
    ImagePiece,
    Verdict,
    build_pairs,
    cut_long_image,
    filter_noise,
    row_energy,
)

__all__ = [
    "CutParams",
    "DegenerateImage",
    "FilterParams",
    "ImagePiece",
    "OcrBlock",
    "RasterFormatError",
    "RawImage",
    "Verdict",
    "build_pairs",
    "cut_long_image",
    "filter_noise",
    "load_ocr_sidecar",
    "read_raster",
    "row_energy",
    "write_raster",
]
