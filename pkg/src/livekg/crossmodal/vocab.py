"""Token vocabulary built from a training corpus."""

from collections import Counter
from collections.abc import Iterable

from ..text import tokenize
from .errors import LengthExceeded

__all__ = ["Vocabulary", "PAD", "CLS", "MASK", "UNK"]

PAD = "<pad>"
CLS = "<cls>"
MASK = "<mask>"
UNK = "<unk>"

_SPECIALS = (PAD, CLS, MASK, UNK)


class Vocabulary:
    """Maps tokens to contiguous ids; unknown tokens collapse to UNK.

    Ids 0..3 are reserved for the special tokens so that id 0 doubles
    as padding in fixed-width batches.
    """

    def __init__(self, tokens: Iterable[str]):
        self._tokens: list[str] = list(_SPECIALS)
        seen = set(self._tokens)
        for tok in tokens:
            if tok in seen:
                raise ValueError(f"duplicate or reserved token {tok!r}")
            seen.add(tok)
            self._tokens.append(tok)
        self._ids = {tok: i for i, tok in enumerate(self._tokens)}

    @classmethod
    def from_corpus(cls, texts: Iterable[str], min_count: int = 1) -> "Vocabulary":
        counts = Counter(tok for text in texts for tok in tokenize(text))
        kept = sorted(tok for tok, n in counts.items() if n >= min_count)
        return cls(kept)

    def __len__(self) -> int:
        return len(self._tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._ids

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(self._tokens)

    @property
    def pad_id(self) -> int:
        return 0

    @property
    def cls_id(self) -> int:
        return 1

    @property
    def mask_id(self) -> int:
        return 2

    @property
    def unk_id(self) -> int:
        return 3

    def id_of(self, token: str) -> int:
        return self._ids.get(token, self.unk_id)

    def token_of(self, token_id: int) -> str:
        return self._tokens[token_id]

    def encode(self, text: str, max_text_len: int | None = None) -> list[int]:
        """Token ids with a leading CLS; errors when over the length cap."""
        ids = [self.cls_id] + [self.id_of(tok) for tok in tokenize(text)]
        if max_text_len is not None and len(ids) > max_text_len + 1:
            raise LengthExceeded(
                f"text of {len(ids) - 1} tokens exceeds max_text_len {max_text_len}")
        return ids

    def encode_truncated(self, text: str, max_text_len: int) -> list[int]:
        ids = [self.cls_id] + [self.id_of(tok) for tok in tokenize(text)]
        return ids[: max_text_len + 1]
