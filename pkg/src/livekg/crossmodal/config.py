"""Model and training hyperparameters."""

from dataclasses import dataclass, field

__all__ = ["ModelConfig", "TrainParams"]


@dataclass(frozen=True)
class ModelConfig:
    vocab_size: int
    d_model: int = 64
    n_layers: int = 2
    n_heads: int = 4
    max_text_len: int = 32
    patch_size: int = 8
    height: int = 64
    width: int = 64
    channels: int = 1
    mask_prob: float = 0.15
    loss_weights: tuple[float, float, float] = (1.0, 1.0, 1.0)
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("vocab_size", "d_model", "n_layers", "n_heads",
                     "max_text_len", "patch_size", "height", "width", "channels"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if self.d_model % self.n_heads != 0:
            raise ValueError(
                f"d_model {self.d_model} not divisible by n_heads {self.n_heads}")
        if self.height % self.patch_size != 0 or self.width % self.patch_size != 0:
            raise ValueError(
                f"image {self.height}x{self.width} not divisible by patch size {self.patch_size}")
        if not 0.0 < self.mask_prob < 1.0:
            raise ValueError(f"mask_prob must be in (0, 1), got {self.mask_prob}")
        if len(self.loss_weights) != 3 or any(w < 0 for w in self.loss_weights):
            raise ValueError(f"loss_weights must be three non-negative numbers, got {self.loss_weights}")

    @property
    def n_patches(self) -> int:
        return (self.height // self.patch_size) * (self.width // self.patch_size)

    @property
    def patch_dim(self) -> int:
        return self.patch_size * self.patch_size * self.channels

    @property
    def d_ff(self) -> int:
        return 4 * self.d_model


@dataclass(frozen=True)
class TrainParams:
    lr: float = 0.1
    epochs: int = 10
    batch_size: int = 8
    clip_norm: float = 5.0
    seed: int = 0
    log: object = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.lr < 0:
            raise ValueError(f"lr must be non-negative, got {self.lr}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be at least 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be at least 1, got {self.batch_size}")
        if self.clip_norm <= 0:
            raise ValueError(f"clip_norm must be positive, got {self.clip_norm}")
