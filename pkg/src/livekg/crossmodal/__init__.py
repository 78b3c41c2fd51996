"""Two-stream text-image encoder with an offline embedding index.

Text and images are encoded independently (a transformer per modality,
CLS readout), trained jointly with three objectives: masked-token
prediction helped by the paired image, masked-patch regression helped by
the paired text, and a contrastive matching loss over in-batch pairs.
Because the streams only meet at the CLS dot product, a catalog's image
embeddings can be precomputed once and each query costs a single text
forward pass.
"""

from .batch import TrainingBatch, pack_batch, sample_patch_masks, sample_token_masks
from .checkpoint import load_checkpoint, save_checkpoint
from .config import ModelConfig, TrainParams
from .errors import (
    CheckpointError,
    CrossmodalError,
    EmptyCorpus,
    EmptyIndex,
    EmptySet,
    IndivisibleDimensions,
    LengthExceeded,
    NoMaskablePatches,
    NoMaskableTokens,
    SingleClass,
)
from .index import EmbeddingIndex, build_index, match
from .losses import cmr_from_similarity, cmr_loss, mlm_loss, mpfr_loss, pretrain_step
from .metrics import auc, auc_fraction
from .model import Counters, TwoStreamModel, init_params, param_spec, zero_grads
from .patches import patchify, unpatchify
from .single_stream import SingleStreamModel, single_stream_score
from .textsim import EncoderTextBackend
from .train import PretrainResult, finetune_matching, pretrain
from .vocab import CLS, MASK, PAD, UNK, Vocabulary

__all__ = [
    "TrainingBatch", "pack_batch", "sample_token_masks", "sample_patch_masks",
    "load_checkpoint", "save_checkpoint",
    "ModelConfig", "TrainParams",
    "CrossmodalError", "CheckpointError", "EmptyCorpus", "EmptyIndex", "EmptySet",
    "IndivisibleDimensions", "LengthExceeded", "NoMaskablePatches",
    "NoMaskableTokens", "SingleClass",
    "EmbeddingIndex", "build_index", "match",
    "mlm_loss", "mpfr_loss", "cmr_loss", "cmr_from_similarity", "pretrain_step",
    "auc", "auc_fraction",
    "Counters", "TwoStreamModel", "init_params", "param_spec", "zero_grads",
    "patchify", "unpatchify",
    "SingleStreamModel", "single_stream_score",
    "EncoderTextBackend",
    "PretrainResult", "pretrain", "finetune_matching",
    "Vocabulary", "PAD", "CLS", "MASK", "UNK",
]
