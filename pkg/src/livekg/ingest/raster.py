"""Portable raster images: grayscale (1 channel) or RGB (3), 8-bit.

Disk format is binary PGM (P5) / PPM (P6) with maxval 255.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


class RasterFormatError(Exception):
    """File is not a binary PGM/PPM with maxval 255."""


@dataclass(frozen=True)
class RawImage:
    width: int
    height: int
    channels: int
    pixels: bytes  # row-major, channels innermost

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be >= 1")
        if self.channels not in (1, 3):
            raise ValueError("channels must be 1 or 3")
        if len(self.pixels) != self.width * self.height * self.channels:
            raise ValueError(
                f"pixel buffer has {len(self.pixels)} bytes, expected "
                f"{self.width * self.height * self.channels}"
            )

    def to_array(self) -> np.ndarray:
        """(height, width, channels) uint8 view of the pixel data."""
        arr = np.frombuffer(self.pixels, dtype=np.uint8)
        return arr.reshape(self.height, self.width, self.channels)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "RawImage":
        if arr.ndim == 2:
            arr = arr[:, :, np.newaxis]
        if arr.dtype != np.uint8:
            raise ValueError("array must be uint8")
        h, w, c = arr.shape
        return cls(w, h, c, arr.tobytes())

    def crop_rows(self, start: int, end: int) -> "RawImage":
        return RawImage.from_array(self.to_array()[start:end])


def _read_header_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # skip whitespace and `#` comments, then read one token
    n = len(data)
    while pos < n:
        if data[pos : pos + 1].isspace():
            pos += 1
        elif data[pos : pos + 1] == b"#":
            while pos < n and data[pos : pos + 1] != b"\n":
                pos += 1
        else:
            break
    start = pos
    while pos < n and not data[pos : pos + 1].isspace():
        pos += 1
    if start == pos:
        raise RasterFormatError("truncated header")
    return data[start:pos], pos


def read_raster(path: str | Path) -> RawImage:
    data = Path(path).read_bytes()
    magic, pos = _read_header_token(data, 0)
    if magic == b"P5":
        channels = 1
    elif magic == b"P6":
        channels = 3
    else:
        raise RasterFormatError(f"unsupported magic {magic!r}")
    fields = []
    for _ in range(3):
        token, pos = _read_header_token(data, pos)
        try:
            fields.append(int(token))
        except ValueError:
            raise RasterFormatError(f"non-numeric header field {token!r}") from None
    width, height, maxval = fields
    if maxval != 255:
        raise RasterFormatError(f"maxval must be 255, got {maxval}")
    pos += 1  # single whitespace byte after maxval
    expected = width * height * channels
    pixels = data[pos : pos + expected]
    if len(pixels) != expected:
        raise RasterFormatError(
            f"expected {expected} pixel bytes, found {len(pixels)}"
        )
    return RawImage(width, height, channels, pixels)


def write_raster(img: RawImage, path: str | Path) -> None:
    magic = b"P5" if img.channels == 1 else b"P6"
    header = magic + b"\n%d %d\n255\n" % (img.width, img.height)
    Path(path).write_bytes(header + img.pixels)


def raster_extension(img: RawImage) -> str:
    return ".pgm" if img.channels == 1 else ".ppm"
