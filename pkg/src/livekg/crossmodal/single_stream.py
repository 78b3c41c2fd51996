"""Joint single-stream scorer used as the efficiency baseline.

Tokens and patches are concatenated into one self-attention stack of the
same width and depth as the two-stream encoders, so every (text, image)
pair costs a full forward pass. Nothing is cached between calls on
purpose; the point of the comparison is that the two-stream matcher can
precompute image embeddings and this model cannot.
"""

import numpy as np

from .config import ModelConfig
from .errors import LengthExceeded
from .layers import linear_forward, stream_forward
from .model import PAD_ID, Counters, _stream_spec

__all__ = ["SingleStreamModel", "single_stream_score"]


def _joint_spec(cfg: ModelConfig) -> dict[str, tuple]:
    d = cfg.d_model
    spec: dict[str, tuple] = {
        "joint.tok_emb": (cfg.vocab_size, d),
        "joint.text_pos": (cfg.max_text_len + 1, d),
        "joint.text_seg": (d,),
        "joint.proj.w": (cfg.patch_dim, d),
        "joint.proj.b": (d,),
        "joint.patch_pos": (cfg.n_patches, d),
        "joint.patch_seg": (d,),
    }
    spec.update(_stream_spec("joint", cfg))
    spec["joint.head.w"] = (d, 1)
    spec["joint.head.b"] = (1,)
    return spec


class SingleStreamModel:
    def __init__(self, cfg: ModelConfig, params: dict[str, np.ndarray] | None = None):
        self.cfg = cfg
        self.counters = Counters()
        if params is None:
            rng = np.random.default_rng(cfg.seed + 1)
            params = {}
            for name, shape in _joint_spec(cfg).items():
                if name.endswith(".g"):
                    params[name] = np.ones(shape)
                elif name.endswith(".b"):
                    params[name] = np.zeros(shape)
                else:
                    params[name] = rng.normal(0.0, 0.02, size=shape)
        self.params = params

    def score(self, ids: np.ndarray, patches: np.ndarray) -> float:
        """One full joint forward for one (text, image) pair."""
        ids = np.asarray(ids)
        if ids.ndim != 1:
            raise ValueError(f"ids must be one sequence, got shape {ids.shape}")
        if len(ids) > self.cfg.max_text_len + 1:
            raise LengthExceeded(
                f"sequence length {len(ids)} exceeds max_text_len + 1 = "
                f"{self.cfg.max_text_len + 1}")
        patches = np.asarray(patches, dtype=np.float64)
        if patches.shape != (self.cfg.n_patches, self.cfg.patch_dim):
            raise ValueError(
                f"patches shape {patches.shape}, expected "
                f"{(self.cfg.n_patches, self.cfg.patch_dim)}")
        s = len(ids)
        text_part = (self.params["joint.tok_emb"][ids]
                     + self.params["joint.text_pos"][:s]
                     + self.params["joint.text_seg"])
        proj, _ = linear_forward(patches, self.params, "joint.proj")
        patch_part = proj + self.params["joint.patch_pos"] + self.params["joint.patch_seg"]
        x = np.concatenate([text_part, patch_part], axis=0)[None]
        pad_mask = np.concatenate(
            [ids != PAD_ID, np.ones(self.cfg.n_patches, dtype=bool)])[None]
        out, _ = stream_forward(
            x, pad_mask, self.params, "joint", self.cfg.n_layers, self.cfg.n_heads)
        logit, _ = linear_forward(out[:, 0], self.params, "joint.head")
        self.counters.joint += 1
        return float(logit[0, 0])


def single_stream_score(model: SingleStreamModel, ids, patches) -> float:
    return model.score(ids, patches)
