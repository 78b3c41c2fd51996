"""Image to patch-sequence conversion and its inverse."""

import numpy as np

from ..ingest.raster import RawImage
from .errors import IndivisibleDimensions

__all__ = ["patchify", "unpatchify"]


def patchify(image: RawImage, patch_size: int) -> np.ndarray:
    """Split an image into square patches, raster order, scaled to [0, 1].

    Returns (n_patches, patch_size**2 * channels) float64. Each row is one
    patch flattened row-major with channels innermost, pixel values / 255.
    """
    if patch_size < 1:
        raise ValueError(f"patch_size must be >= 1, got {patch_size}")
    h, w, c = image.height, image.width, image.channels
    if h % patch_size != 0 or w % patch_size != 0:
        raise IndivisibleDimensions(
            f"image {h}x{w} not divisible by patch size {patch_size}")
    arr = image.to_array().astype(np.float64) / 255.0
    rows, cols = h // patch_size, w // patch_size
    # (rows, P, cols, P, C) -> (rows, cols, P, P, C) -> (N, P*P*C)
    tiled = arr.reshape(rows, patch_size, cols, patch_size, c)
    tiled = tiled.transpose(0, 2, 1, 3, 4)
    return np.ascontiguousarray(tiled.reshape(rows * cols, patch_size * patch_size * c))


def unpatchify(patches: np.ndarray, patch_size: int, height: int, width: int,
               channels: int) -> RawImage:
    """Inverse of :func:`patchify`; exact for patch values produced by it."""
    rows, cols = height // patch_size, width // patch_size
    if height % patch_size or width % patch_size:
        raise IndivisibleDimensions(
            f"image {height}x{width} not divisible by patch size {patch_size}")
    expected = (rows * cols, patch_size * patch_size * channels)
    if patches.shape != expected:
        raise ValueError(f"patches shape {patches.shape}, expected {expected}")
    tiled = patches.reshape(rows, cols, patch_size, patch_size, channels)
    arr = tiled.transpose(0, 2, 1, 3, 4).reshape(height, width, channels)
    pixels = np.rint(arr * 255.0).astype(np.uint8)
    return RawImage.from_array(pixels)
