"""Padded training batches of text/image pairs."""

from dataclasses import dataclass, field

import numpy as np

from .model import PAD_ID

__all__ = ["TrainingBatch", "pack_batch", "sample_token_masks", "sample_patch_masks"]


@dataclass
class TrainingBatch:
    """m aligned pairs; row i of ids pairs with row i of patches.

    ids are right-padded with PAD (0); patch grids are fixed-size so only
    text needs padding. Mask position lists may be empty per row.
    """
    ids: np.ndarray            # (m, S) int
    patches: np.ndarray        # (m, N, patch_dim) float64
    text_masks: list[list[int]] = field(default_factory=list)
    patch_masks: list[list[int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.ids.ndim != 2 or self.patches.ndim != 3:
            raise ValueError("ids must be (m, S) and patches (m, N, dim)")
        m = self.ids.shape[0]
        if m < 1:
            raise ValueError("a batch needs at least one pair")
        if self.patches.shape[0] != m:
            raise ValueError(
                f"{m} text rows but {self.patches.shape[0]} patch rows")
        if not self.text_masks:
            self.text_masks = [[] for _ in range(m)]
        if not self.patch_masks:
            self.patch_masks = [[] for _ in range(m)]
        if len(self.text_masks) != m or len(self.patch_masks) != m:
            raise ValueError("mask lists must have one entry per pair")

    @property
    def size(self) -> int:
        return self.ids.shape[0]


def pack_batch(id_lists: list[list[int]], patch_arrays: list[np.ndarray]) -> TrainingBatch:
    if len(id_lists) != len(patch_arrays):
        raise ValueError("need equally many token lists and patch arrays")
    if not id_lists:
        raise ValueError("a batch needs at least one pair")
    width = max(len(ids) for ids in id_lists)
    ids = np.full((len(id_lists), width), PAD_ID, dtype=np.int64)
    for row, seq in enumerate(id_lists):
        ids[row, : len(seq)] = seq
    return TrainingBatch(ids, np.stack(patch_arrays))


def sample_token_masks(rng: np.random.Generator, lengths: list[int],
                       mask_prob: float) -> list[list[int]]:
    """Mask positions per row over token positions 1..length-1 (CLS excluded).

    Rows with at least one maskable position always get at least one mask.
    """
    out = []
    for length in lengths:
        candidates = list(range(1, length))
        picked = [p for p in candidates if rng.random() < mask_prob]
        if not picked and candidates:
            picked = [int(rng.choice(candidates))]
        out.append(picked)
    return out


def sample_patch_masks(rng: np.random.Generator, m: int, n_patches: int,
                       mask_prob: float) -> list[list[int]]:
    out = []
    for _ in range(m):
        picked = [p for p in range(n_patches) if rng.random() < mask_prob]
        if not picked and n_patches:
            picked = [int(rng.choice(n_patches))]
        out.append(picked)
    return out
