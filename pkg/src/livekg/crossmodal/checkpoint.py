"""Model checkpoints: config + vocabulary + all parameters in one file."""

from dataclasses import asdict

from .config import ModelConfig
from .errors import CheckpointError
from .model import TwoStreamModel, param_spec
from .tensorfile import load_tensors, save_tensors
from .vocab import _SPECIALS, Vocabulary

__all__ = ["save_checkpoint", "load_checkpoint"]


def save_checkpoint(model: TwoStreamModel, vocab: Vocabulary, path) -> None:
    cfg_dict = asdict(model.cfg)
    cfg_dict["loss_weights"] = list(cfg_dict["loss_weights"])
    meta = {"kind": "checkpoint", "config": cfg_dict, "vocab": list(vocab.tokens)}
    save_tensors(path, model.params, meta)


def load_checkpoint(path) -> tuple[TwoStreamModel, Vocabulary]:
    """Rebuilds the model, validating every tensor against the config."""
    tensors, meta = load_tensors(path)
    if meta.get("kind") != "checkpoint":
        raise CheckpointError(f"{path}: not a model checkpoint")
    try:
        cfg_dict = dict(meta["config"])
        cfg_dict["loss_weights"] = tuple(cfg_dict["loss_weights"])
        cfg = ModelConfig(**cfg_dict)
        tokens = meta["vocab"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CheckpointError(f"{path}: bad checkpoint config: {exc}") from exc
    if tuple(tokens[:4]) != _SPECIALS:
        raise CheckpointError(f"{path}: vocabulary lacks the reserved tokens")
    if len(tokens) != cfg.vocab_size:
        raise CheckpointError(
            f"{path}: vocabulary of {len(tokens)} tokens but config says {cfg.vocab_size}")
    expected = param_spec(cfg)
    missing = expected.keys() - tensors.keys()
    extra = tensors.keys() - expected.keys()
    if missing or extra:
        raise CheckpointError(
            f"{path}: parameter names do not match config "
            f"(missing {sorted(missing)}, unexpected {sorted(extra)})")
    for name, shape in expected.items():
        if tensors[name].shape != shape:
            raise CheckpointError(
                f"{path}: tensor {name} has shape {tensors[name].shape}, expected {shape}")
    return TwoStreamModel(cfg, tensors), Vocabulary(tokens[4:])
