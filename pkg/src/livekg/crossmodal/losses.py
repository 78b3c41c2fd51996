"""Pretraining objectives over a TwoStreamModel.

Each loss runs its own forward passes (the masking pattern differs per
objective) and, when a grads dict is supplied, backpropagates into it
scaled by `scale`, so a weighted sum of losses accumulates in one dict.
Masked positions in one modality receive the other modality's CLS vector,
so every loss couples both encoders.
"""

import numpy as np

from .batch import TrainingBatch
from .errors import NoMaskablePatches, NoMaskableTokens
from .layers import linear_forward, linear_backward, log_softmax, softmax
from .model import TwoStreamModel

__all__ = ["mlm_loss", "mpfr_loss", "cmr_loss", "cmr_from_similarity", "pretrain_step"]


def _bool_mask(shape, positions):
    mask = np.zeros(shape, dtype=bool)
    for row, cols in enumerate(positions):
        for col in cols:
            mask[row, col] = True
    return mask


def mlm_loss(model: TwoStreamModel, batch: TrainingBatch, grads=None,
             scale: float = 1.0) -> float:
    """Masked-token cross entropy, averaged over masked positions only."""
    mask = _bool_mask(batch.ids.shape, batch.text_masks)
    n_masked = int(mask.sum())
    if n_masked == 0:
        raise NoMaskableTokens("MLM needs at least one masked token")

    img_fwd = model.encode_image(batch.patches)
    text_fwd = model.encode_text(batch.ids, batch.text_masks, inject=img_fwd.cls)
    hidden = text_fwd.outputs[mask]
    logits, head_cache = linear_forward(hidden, model.params, "head.mlm")
    targets = batch.ids[mask]
    logp = log_softmax(logits)
    loss = float(-logp[np.arange(n_masked), targets].mean())

    if grads is not None:
        dlogits = softmax(logits)
        dlogits[np.arange(n_masked), targets] -= 1.0
        dlogits *= scale / n_masked
        dhidden = linear_backward(dlogits, head_cache, model.params, grads)
        d_out = np.zeros_like(text_fwd.outputs)
        d_out[mask] = dhidden
        d_inject = model.backward_text(d_out, text_fwd, grads)
        d_img = np.zeros_like(img_fwd.outputs)
        d_img[:, 0] = d_inject
        model.backward_image(d_img, img_fwd, grads)
    return loss


def mpfr_loss(model: TwoStreamModel, batch: TrainingBatch, grads=None,
              scale: float = 1.0) -> float:
    """Masked-patch feature regression: MSE against the original patch values."""
    mask = _bool_mask((batch.size, batch.patches.shape[1]), batch.patch_masks)
    n_masked = int(mask.sum())
    if n_masked == 0:
        raise NoMaskablePatches("MPFR needs at least one masked patch")

    text_fwd = model.encode_text(batch.ids)
    img_fwd = model.encode_image(batch.patches, batch.patch_masks, inject=text_fwd.cls)
    hidden = img_fwd.outputs[:, 1:][mask]
    pred, head_cache = linear_forward(hidden, model.params, "head.mpfr")
    diff = pred - batch.patches[mask]
    loss = float((diff ** 2).mean())

    if grads is not None:
        dpred = (2.0 * scale / diff.size) * diff
        dhidden = linear_backward(dpred, head_cache, model.params, grads)
        d_out = np.zeros_like(img_fwd.outputs)
        d_out[:, 1:][mask] = dhidden
        d_inject = model.backward_image(d_out, img_fwd, grads)
        d_text = np.zeros_like(text_fwd.outputs)
        d_text[:, 0] = d_inject
        model.backward_text(d_text, text_fwd, grads)
    return loss


def cmr_from_similarity(sim: np.ndarray) -> tuple[float, np.ndarray]:
    """Contrastive loss and its gradient for a square similarity grid.

    sim[a][b] compares image a with text b; the diagonal holds the true
    pairs. Loss is the mean of image-to-text (rows) and text-to-image
    (columns) cross entropies, so it is symmetric under transposition.
    """
    sim = np.asarray(sim, dtype=np.float64)
    if sim.ndim != 2 or sim.shape[0] != sim.shape[1]:
        raise ValueError(f"similarity grid must be square, got shape {sim.shape}")
    m = sim.shape[0]
    idx = np.arange(m)
    row_lp = log_softmax(sim, axis=1)
    col_lp = log_softmax(sim, axis=0)
    loss = float(-0.5 * (row_lp[idx, idx].mean() + col_lp[idx, idx].mean())) + 0.0
    eye = np.eye(m)
    dsim = (softmax(sim, axis=1) - eye) + (softmax(sim, axis=0) - eye)
    dsim *= 0.5 / m
    return loss, dsim


def cmr_loss(model: TwoStreamModel, batch: TrainingBatch, grads=None,
             scale: float = 1.0) -> float:
    """Contrastive matching over in-batch pairs; see cmr_from_similarity."""
    text_fwd = model.encode_text(batch.ids)
    img_fwd = model.encode_image(batch.patches)
    t, v = text_fwd.cls, img_fwd.cls
    loss, dsim = cmr_from_similarity(v @ t.T)

    if grads is not None:
        dsim = dsim * scale
        dv = dsim @ t
        dt = dsim.T @ v
        d_text = np.zeros_like(text_fwd.outputs)
        d_text[:, 0] = dt
        model.backward_text(d_text, text_fwd, grads)
        d_img = np.zeros_like(img_fwd.outputs)
        d_img[:, 0] = dv
        model.backward_image(d_img, img_fwd, grads)
    return loss


def pretrain_step(model: TwoStreamModel, batch: TrainingBatch,
                  grads=None) -> dict[str, float]:
    """Weighted sum of the three objectives; zero-weight losses are skipped."""
    w_mlm, w_mpfr, w_cmr = model.cfg.loss_weights
    parts: dict[str, float] = {}
    total = 0.0
    if w_mlm > 0:
        parts["mlm"] = mlm_loss(model, batch, grads, scale=w_mlm)
        total += w_mlm * parts["mlm"]
    if w_mpfr > 0:
        parts["mpfr"] = mpfr_loss(model, batch, grads, scale=w_mpfr)
        total += w_mpfr * parts["mpfr"]
    if w_cmr > 0:
        parts["cmr"] = cmr_loss(model, batch, grads, scale=w_cmr)
        total += w_cmr * parts["cmr"]
    parts["total"] = total
    return parts
