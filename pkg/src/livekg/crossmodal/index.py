"""Offline image-embedding index and text-to-image matching."""

from dataclasses import dataclass

import numpy as np

from ..ingest.raster import RawImage
from .errors import CheckpointError, EmptyIndex
from .model import TwoStreamModel
from .patches import patchify
from .tensorfile import load_tensors, save_tensors
from .vocab import Vocabulary

__all__ = ["EmbeddingIndex", "build_index", "match"]


@dataclass(frozen=True)
class EmbeddingIndex:
    """Rows of image CLS embeddings with a parallel id list."""
    matrix: np.ndarray  # (n, d_model) float64
    ids: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.matrix.ndim != 2:
            raise ValueError(f"matrix must be 2-d, got shape {self.matrix.shape}")
        if len(self.ids) != self.matrix.shape[0]:
            raise ValueError(
                f"{len(self.ids)} ids for {self.matrix.shape[0]} rows")
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("index ids must be unique")
        if not np.isfinite(self.matrix).all():
            raise ValueError("index rows must be finite")
        self.matrix.setflags(write=False)

    def __len__(self) -> int:
        return self.matrix.shape[0]

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    def top_k(self, query: np.ndarray, k: int) -> list[tuple[str, float]]:
        """Highest dot products first; equal scores order by id.

        Scores are taken row by row: a whole-matrix matvec can round a
        row's score differently depending on its position, which would
        break permutation equivariance in the last bits.
        """
        if len(self) == 0:
            raise EmptyIndex("the index has no rows")
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")
        query = np.asarray(query, dtype=np.float64)
        ranked = sorted(((item_id, float(row @ query))
                         for item_id, row in zip(self.ids, self.matrix)),
                        key=lambda pair: (-pair[1], pair[0]))
        return ranked[: min(k, len(self))]

    def save(self, path) -> None:
        save_tensors(path, {"matrix": self.matrix},
                     {"kind": "index", "ids": list(self.ids)})

    @classmethod
    def load(cls, path) -> "EmbeddingIndex":
        tensors, meta = load_tensors(path)
        if meta.get("kind") != "index" or "matrix" not in tensors:
            raise CheckpointError(f"{path}: not an embedding index")
        ids = meta.get("ids")
        if not isinstance(ids, list):
            raise CheckpointError(f"{path}: index ids missing")
        return cls(tensors["matrix"], tuple(ids))


def build_index(model: TwoStreamModel,
                items: list[tuple[str, RawImage]]) -> EmbeddingIndex:
    """Encode each image once and store its CLS embedding.

    Images are encoded one at a time: batched matrix kernels can differ in
    the last bits depending on batch composition, and an index row must be
    bit-identical to a fresh single-image encode.
    """
    ids = tuple(item_id for item_id, _ in items)
    if not items:
        return EmbeddingIndex(np.zeros((0, model.cfg.d_model)), ids)
    rows = [model.encode_image(patchify(image, model.cfg.patch_size)[None]).cls[0]
            for _, image in items]
    return EmbeddingIndex(np.stack(rows), ids)


def match(model: TwoStreamModel, vocab: Vocabulary, text: str,
          index: EmbeddingIndex, k: int) -> list[tuple[str, float]]:
    """Top-k index entries for a query text: one text forward, no image work."""
    ids = np.array([vocab.encode(text, model.cfg.max_text_len)])
    query = model.encode_text(ids).cls[0]
    return index.top_k(query, k)
