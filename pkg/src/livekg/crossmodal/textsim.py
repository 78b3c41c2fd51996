"""Text-CLS cosine similarity, pluggable into the FAQ store."""

import numpy as np

from .checkpoint import load_checkpoint
from .model import TwoStreamModel
from .vocab import Vocabulary

__all__ = ["EncoderTextBackend"]


class EncoderTextBackend:
    """Scores question similarity with the text encoder's CLS embedding.

    Drop-in for the TF-IDF backend: built over a fixed document list, then
    queried one text at a time.
    """

    def __init__(self, model: TwoStreamModel, vocab: Vocabulary, documents):
        self._model = model
        self._vocab = vocab
        self._docs = [self._embed(doc) for doc in documents]

    def _embed(self, text: str) -> np.ndarray:
        ids = np.array([self._vocab.encode_truncated(text, self._model.cfg.max_text_len)])
        cls = self._model.encode_text(ids).cls[0]
        norm = float(np.linalg.norm(cls))
        return cls / norm if norm > 0 else cls

    def similarities(self, query: str) -> list[float]:
        q = self._embed(query)
        return [float(q @ d) for d in self._docs]

    @classmethod
    def factory(cls, checkpoint_path):
        """Backend factory bound to one checkpoint, loaded lazily once."""
        loaded: list = []

        def make(documents):
            if not loaded:
                loaded.extend(load_checkpoint(checkpoint_path))
            model, vocab = loaded
            return cls(model, vocab, documents)

        return make
