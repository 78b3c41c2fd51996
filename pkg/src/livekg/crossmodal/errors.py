class CrossmodalError(ValueError):
    """Base for encoder and training errors."""


class IndivisibleDimensions(CrossmodalError):
    """Image height or width not divisible by the patch size."""


class LengthExceeded(CrossmodalError):
    """A sequence longer than the configured maximum."""


class NoMaskableTokens(CrossmodalError):
    """MLM asked to run with nothing masked."""


class NoMaskablePatches(CrossmodalError):
    """MPFR asked to run with nothing masked."""


class EmptyCorpus(CrossmodalError):
    """Pretraining needs at least one pair."""


class EmptySet(CrossmodalError):
    """Fine-tuning needs at least one labeled example."""


class EmptyIndex(CrossmodalError):
    """Matching against an index with no rows."""


class SingleClass(CrossmodalError):
    """AUC needs both a positive and a negative."""


class CheckpointError(CrossmodalError):
    """A checkpoint or index file that cannot be loaded."""
