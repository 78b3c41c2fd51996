"""Single-file container for named float tensors.

Layout: magic "LKTF", u32 version, u32 header length, UTF-8 JSON header,
then the tensors' raw bytes as little-endian float32 in header order. The
header is {"meta": {...}, "tensors": [{"name": ..., "shape": [...]}]}.
"""

import json
import struct
from pathlib import Path

import numpy as np

from .errors import CheckpointError

__all__ = ["save_tensors", "load_tensors", "FORMAT_VERSION"]

_MAGIC = b"LKTF"
FORMAT_VERSION = 1


def save_tensors(path, tensors: dict[str, np.ndarray], meta: dict | None = None) -> None:
    entries = [{"name": name, "shape": list(array.shape)}
               for name, array in tensors.items()]
    header = json.dumps({"meta": meta or {}, "tensors": entries},
                        ensure_ascii=False).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<II", FORMAT_VERSION, len(header)))
        fh.write(header)
        for array in tensors.values():
            fh.write(np.ascontiguousarray(array, dtype="<f4").tobytes())


def load_tensors(path) -> tuple[dict[str, np.ndarray], dict]:
    """Returns (tensors as float64, meta). Raises CheckpointError on damage."""
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CheckpointError(f"cannot read {path}: {exc}") from exc
    if len(data) < 12 or data[:4] != _MAGIC:
        raise CheckpointError(f"{path}: not a tensor file")
    version, header_len = struct.unpack_from("<II", data, 4)
    if version != FORMAT_VERSION:
        raise CheckpointError(f"{path}: unsupported version {version}")
    try:
        header = json.loads(data[12: 12 + header_len].decode("utf-8"))
        entries = header["tensors"]
        meta = header.get("meta", {})
    except (ValueError, KeyError, UnicodeDecodeError) as exc:
        raise CheckpointError(f"{path}: malformed header: {exc}") from exc
    tensors: dict[str, np.ndarray] = {}
    offset = 12 + header_len
    for entry in entries:
        try:
            name, shape = entry["name"], tuple(entry["shape"])
        except (TypeError, KeyError) as exc:
            raise CheckpointError(f"{path}: malformed tensor entry {entry!r}") from exc
        count = 1
        for dim in shape:
            count *= dim
        end = offset + 4 * count
        if end > len(data) or name in tensors:
            raise CheckpointError(f"{path}: truncated or duplicate tensor {name!r}")
        flat = np.frombuffer(data[offset:end], dtype="<f4")
        tensors[name] = flat.astype(np.float64).reshape(shape)
        offset = end
    if offset != len(data):
        raise CheckpointError(f"{path}: {len(data) - offset} trailing bytes")
    return tensors, meta
