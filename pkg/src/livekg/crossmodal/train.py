"""Plain-SGD training loops: joint pretraining and match-head fine-tuning."""

from dataclasses import dataclass, replace

import numpy as np

from ..ingest.raster import RawImage
from .batch import TrainingBatch, pack_batch, sample_patch_masks, sample_token_masks
from .config import ModelConfig, TrainParams
from .errors import EmptyCorpus, EmptySet
from .losses import pretrain_step
from .model import TwoStreamModel, zero_grads
from .patches import patchify
from .vocab import Vocabulary

__all__ = ["PretrainResult", "pretrain", "finetune_matching",
           "clip_grads", "sgd_step", "prepare_pairs"]


def clip_grads(grads: dict[str, np.ndarray], max_norm: float) -> float:
    """Global-norm clipping; returns the pre-clip norm."""
    total = 0.0
    for g in grads.values():
        total += float(np.sum(g * g))
    norm = float(np.sqrt(total))
    if norm > max_norm:
        factor = max_norm / norm
        for g in grads.values():
            g *= factor
    return norm


def sgd_step(params: dict[str, np.ndarray], grads: dict[str, np.ndarray],
             lr: float) -> None:
    for name, g in grads.items():
        params[name] -= lr * g


def prepare_pairs(pairs, cfg: ModelConfig, vocab: Vocabulary):
    """Tokenize texts (truncated) and patchify images for training."""
    id_lists, patch_arrays = [], []
    for text, image in pairs:
        if (image.height, image.width, image.channels) != (cfg.height, cfg.width, cfg.channels):
            raise ValueError(
                f"image {image.height}x{image.width}x{image.channels} does not match "
                f"config {cfg.height}x{cfg.width}x{cfg.channels}")
        id_lists.append(vocab.encode_truncated(text, cfg.max_text_len))
        patch_arrays.append(patchify(image, cfg.patch_size))
    return id_lists, patch_arrays


@dataclass
class PretrainResult:
    model: TwoStreamModel
    vocab: Vocabulary
    epoch_losses: list[dict[str, float]]


def pretrain(pairs: list[tuple[str, RawImage]], cfg: ModelConfig,
             train: TrainParams | None = None) -> PretrainResult:
    """Train a fresh model on (text, image) pairs.

    The vocabulary is derived from the corpus, so cfg.vocab_size is
    overridden. Masks are resampled each epoch; with a fixed seed the whole
    trajectory is reproducible.
    """
    if not pairs:
        raise EmptyCorpus("pretraining needs at least one pair")
    train = train or TrainParams()
    vocab = Vocabulary.from_corpus(text for text, _ in pairs)
    cfg = replace(cfg, vocab_size=len(vocab))
    id_lists, patch_arrays = prepare_pairs(pairs, cfg, vocab)

    model = TwoStreamModel(cfg)
    rng = np.random.default_rng(train.seed)
    w_mlm, w_mpfr, _ = cfg.loss_weights
    epoch_losses: list[dict[str, float]] = []
    n = len(pairs)
    for epoch in range(train.epochs):
        order = rng.permutation(n)
        sums: dict[str, float] = {}
        batches = 0
        for start in range(0, n, train.batch_size):
            chosen = order[start: start + train.batch_size]
            batch = pack_batch([id_lists[i] for i in chosen],
                               [patch_arrays[i] for i in chosen])
            if w_mlm > 0:
                lengths = [len(id_lists[i]) for i in chosen]
                batch.text_masks = sample_token_masks(rng, lengths, cfg.mask_prob)
            if w_mpfr > 0:
                batch.patch_masks = sample_patch_masks(
                    rng, batch.size, cfg.n_patches, cfg.mask_prob)
            grads = zero_grads(model.params)
            parts = pretrain_step(model, batch, grads)
            clip_grads(grads, train.clip_norm)
            sgd_step(model.params, grads, train.lr)
            for key, value in parts.items():
                sums[key] = sums.get(key, 0.0) + value
            batches += 1
        means = {key: value / batches for key, value in sums.items()}
        epoch_losses.append(means)
        if train.log is not None:
            train.log(epoch, means)
    return PretrainResult(model, vocab, epoch_losses)


def finetune_matching(model: TwoStreamModel, examples, vocab: Vocabulary,
                      train: TrainParams | None = None) -> list[float]:
    """Fit the calibration scalars tau and bias with BCE; encoders stay frozen.

    examples: (text, RawImage, label) triples with label in {0, 1}. Scoring
    stays sigma(dot * tau + bias), identical to the deployed matcher, so a
    prebuilt embedding index remains valid after fine-tuning.
    """
    if not examples:
        raise EmptySet("fine-tuning needs at least one example")
    train = train or TrainParams()
    labels = np.array([label for _, _, label in examples], dtype=np.float64)
    if not np.isin(labels, (0.0, 1.0)).all():
        raise ValueError("labels must be 0 or 1")

    dots = np.empty(len(examples))
    for i, (text, image, _) in enumerate(examples):
        ids = np.array([vocab.encode(text, model.cfg.max_text_len)])
        patches = patchify(image, model.cfg.patch_size)[None]
        t = model.encode_text(ids).cls[0]
        v = model.encode_image(patches).cls[0]
        dots[i] = float(t @ v)

    history = []
    n = len(examples)
    for _ in range(train.epochs):
        z = dots * model.params["match.tau"] + model.params["match.bias"]
        s = 1.0 / (1.0 + np.exp(-z))
        eps = 1e-12
        history.append(float(-np.mean(
            labels * np.log(s + eps) + (1.0 - labels) * np.log(1.0 - s + eps))))
        dz = (s - labels) / n
        dtau = float(dz @ dots)
        dbias = float(dz.sum())
        norm = float(np.hypot(dtau, dbias))
        if norm > train.clip_norm:
            dtau *= train.clip_norm / norm
            dbias *= train.clip_norm / norm
        model.params["match.tau"] -= train.lr * dtau
        model.params["match.bias"] -= train.lr * dbias
    return history
