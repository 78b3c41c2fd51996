"""Two-stream encoder: one transformer per modality, CLS readout each.

Parameters live in a flat name -> float64 array dict whose layout is a pure
function of :class:`ModelConfig`, which is what makes checkpoints verifiable.
Text tokens embed as token + position; image patches embed as a linear
projection + position + a shared segment vector, with a learned CLS vector
prepended. Masked positions (for the denoising losses) are replaced at the
embedding level by a learned MASK vector plus an injected vector from the
other modality, so gradients flow across streams.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import ModelConfig
from .errors import LengthExceeded
from .layers import linear_forward, linear_backward, stream_forward, stream_backward

__all__ = ["TwoStreamModel", "Counters", "param_spec", "init_params", "zero_grads"]

PAD_ID = 0


@dataclass
class Counters:
    """Forward-pass counts, one unit per encoded sequence."""
    text: int = 0
    image: int = 0
    joint: int = 0

    def reset(self) -> None:
        self.text = self.image = self.joint = 0


def _stream_spec(prefix: str, cfg: ModelConfig) -> dict[str, tuple]:
    d, f = cfg.d_model, cfg.d_ff
    spec: dict[str, tuple] = {}
    for i in range(cfg.n_layers):
        base = f"{prefix}.l{i}"
        spec[f"{base}.ln1.g"] = (d,)
        spec[f"{base}.ln1.b"] = (d,)
        for part in ("q", "k", "v", "o"):
            spec[f"{base}.attn.{part}.w"] = (d, d)
            spec[f"{base}.attn.{part}.b"] = (d,)
        spec[f"{base}.ln2.g"] = (d,)
        spec[f"{base}.ln2.b"] = (d,)
        spec[f"{base}.fc1.w"] = (d, f)
        spec[f"{base}.fc1.b"] = (f,)
        spec[f"{base}.fc2.w"] = (f, d)
        spec[f"{base}.fc2.b"] = (d,)
    spec[f"{prefix}.lnf.g"] = (d,)
    spec[f"{prefix}.lnf.b"] = (d,)
    return spec


def param_spec(cfg: ModelConfig) -> dict[str, tuple]:
    """Name -> shape for every parameter, in a fixed order."""
    d = cfg.d_model
    spec: dict[str, tuple] = {
        "text.tok_emb": (cfg.vocab_size, d),
        "text.pos_emb": (cfg.max_text_len + 1, d),
        "text.mask_emb": (d,),
    }
    spec.update(_stream_spec("text", cfg))
    spec.update({
        "img.proj.w": (cfg.patch_dim, d),
        "img.proj.b": (d,),
        "img.cls": (d,),
        "img.seg": (d,),
        "img.pos_emb": (cfg.n_patches + 1, d),
        "img.mask_emb": (d,),
    })
    spec.update(_stream_spec("img", cfg))
    spec.update({
        "head.mlm.w": (d, cfg.vocab_size),
        "head.mlm.b": (cfg.vocab_size,),
        "head.mpfr.w": (d, cfg.patch_dim),
        "head.mpfr.b": (cfg.patch_dim,),
        "match.tau": (),
        "match.bias": (),
    })
    return spec


def init_params(cfg: ModelConfig) -> dict[str, np.ndarray]:
    rng = np.random.default_rng(cfg.seed)
    params: dict[str, np.ndarray] = {}
    for name, shape in param_spec(cfg).items():
        if name == "match.tau" or name.endswith(".g"):
            params[name] = np.ones(shape)
        elif name.endswith(".b") or name == "match.bias":
            params[name] = np.zeros(shape)
        else:
            params[name] = rng.normal(0.0, 0.02, size=shape)
    return params


def zero_grads(params: dict[str, np.ndarray]) -> dict[str, np.ndarray]:
    return {name: np.zeros_like(value) for name, value in params.items()}


def _mask_bool(shape, mask_positions, offset=0):
    mask = np.zeros(shape, dtype=bool)
    if mask_positions is not None:
        for row, positions in enumerate(mask_positions):
            for pos in positions:
                mask[row, pos + offset] = True
    return mask


@dataclass
class TextForward:
    outputs: np.ndarray  # (B, S, d_model)
    cache: tuple = field(repr=False)

    @property
    def cls(self) -> np.ndarray:
        return self.outputs[:, 0]


@dataclass
class ImageForward:
    outputs: np.ndarray  # (B, N + 1, d_model)
    cache: tuple = field(repr=False)

    @property
    def cls(self) -> np.ndarray:
        return self.outputs[:, 0]


class TwoStreamModel:
    def __init__(self, cfg: ModelConfig, params: dict[str, np.ndarray] | None = None):
        self.cfg = cfg
        self.params = init_params(cfg) if params is None else params
        self.counters = Counters()

    # -- text stream ---------------------------------------------------

    def encode_text(self, ids: np.ndarray, mask_positions=None, inject=None) -> TextForward:
        """ids: (B, S) int array, row 0 of each sequence is CLS, 0-padded.

        mask_positions: per-row lists of token positions whose embeddings are
        replaced by MASK + inject[row]. CLS (position 0) is never maskable.
        """
        ids = np.asarray(ids)
        if ids.ndim != 2:
            raise ValueError(f"ids must be (batch, seq), got shape {ids.shape}")
        b, s = ids.shape
        if s > self.cfg.max_text_len + 1:
            raise LengthExceeded(
                f"sequence length {s} exceeds max_text_len + 1 = {self.cfg.max_text_len + 1}")
        if np.any(ids[:, 0] == PAD_ID):
            raise ValueError("every sequence must start with CLS")
        mask = _mask_bool((b, s), mask_positions)
        if mask[:, 0].any():
            raise ValueError("CLS position cannot be masked")
        pad_mask = ids != PAD_ID
        if (mask & ~pad_mask).any():
            raise ValueError("cannot mask a padding position")

        base = self.params["text.tok_emb"][ids]
        if mask.any():
            fill = self.params["text.mask_emb"]
            if inject is not None:
                fill = fill + inject
            else:
                fill = np.broadcast_to(fill, (b, self.cfg.d_model))
            rows = mask.nonzero()[0]
            base[mask] = fill[rows]
        x = base + self.params["text.pos_emb"][:s]
        out, stream_cache = stream_forward(
            x, pad_mask, self.params, "text", self.cfg.n_layers, self.cfg.n_heads)
        self.counters.text += b
        return TextForward(out, (ids, mask, inject is not None, stream_cache))

    def backward_text(self, d_outputs: np.ndarray, fwd: TextForward, grads) -> np.ndarray | None:
        """Returns d_inject (B, d_model) when an injection was used, else None."""
        ids, mask, injected, stream_cache = fwd.cache
        dx = stream_backward(d_outputs, stream_cache, self.params, grads)
        s = ids.shape[1]
        grads["text.pos_emb"][:s] += dx.sum(axis=0)
        d_inject = None
        if mask.any():
            dmasked = dx[mask]
            grads["text.mask_emb"] += dmasked.sum(axis=0)
            if injected:
                d_inject = np.zeros((ids.shape[0], self.cfg.d_model))
                np.add.at(d_inject, mask.nonzero()[0], dmasked)
        unmasked = ~mask
        np.add.at(grads["text.tok_emb"], ids[unmasked], dx[unmasked])
        return d_inject

    # -- image stream --------------------------------------------------

    def encode_image(self, patches: np.ndarray, mask_positions=None, inject=None) -> ImageForward:
        """patches: (B, n_patches, patch_dim) float array scaled to [0, 1]."""
        patches = np.asarray(patches, dtype=np.float64)
        if patches.ndim != 3:
            raise ValueError(f"patches must be (batch, n, dim), got shape {patches.shape}")
        b, n, dim = patches.shape
        if n != self.cfg.n_patches or dim != self.cfg.patch_dim:
            raise ValueError(
                f"patch grid {n}x{dim} does not match config "
                f"{self.cfg.n_patches}x{self.cfg.patch_dim}")
        mask = _mask_bool((b, n), mask_positions)

        proj, proj_cache = linear_forward(patches, self.params, "img.proj")
        if mask.any():
            fill = self.params["img.mask_emb"]
            if inject is not None:
                fill = fill + inject
            else:
                fill = np.broadcast_to(fill, (b, self.cfg.d_model))
            rows = mask.nonzero()[0]
            proj[mask] = fill[rows]
        cls_col = np.broadcast_to(self.params["img.cls"], (b, 1, self.cfg.d_model))
        x = np.concatenate([cls_col, proj], axis=1)
        x = x + self.params["img.pos_emb"][: n + 1] + self.params["img.seg"]
        out, stream_cache = stream_forward(
            x, None, self.params, "img", self.cfg.n_layers, self.cfg.n_heads)
        self.counters.image += b
        return ImageForward(out, (patches, mask, inject is not None, proj_cache, stream_cache))

    def backward_image(self, d_outputs: np.ndarray, fwd: ImageForward, grads) -> np.ndarray | None:
        patches, mask, injected, proj_cache, stream_cache = fwd.cache
        dx = stream_backward(d_outputs, stream_cache, self.params, grads)
        b, n = mask.shape
        grads["img.seg"] += dx.sum(axis=(0, 1))
        grads["img.pos_emb"][: n + 1] += dx.sum(axis=0)
        grads["img.cls"] += dx[:, 0].sum(axis=0)
        dproj = dx[:, 1:]
        d_inject = None
        if mask.any():
            dmasked = dproj[mask]
            grads["img.mask_emb"] += dmasked.sum(axis=0)
            if injected:
                d_inject = np.zeros((b, self.cfg.d_model))
                np.add.at(d_inject, mask.nonzero()[0], dmasked)
            dproj = np.where(mask[:, :, None], 0.0, dproj)
        linear_backward(dproj, proj_cache, self.params, grads)
        return d_inject

    # -- heads -----------------------------------------------------------

    def match_score(self, text_cls: np.ndarray, image_cls: np.ndarray) -> np.ndarray:
        """Calibrated matching probability sigma(dot * tau + bias)."""
        z = np.sum(text_cls * image_cls, axis=-1) * self.params["match.tau"] \
            + self.params["match.bias"]
        return 1.0 / (1.0 + np.exp(-z))
