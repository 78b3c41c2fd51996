"""Item search: lexicon tagging plus token-overlap scoring."""

from .lexicon import Lexicon, LexiconError, SEED_TYPES
from .scoring import (
    EmptyCatalog,
    ItemDoc,
    ScoreWeights,
    build_item_doc,
    build_item_docs,
    rank,
    score,
    search,
)
from .tagger import Span, TaggedText, ner_tag

__all__ = [
    "EmptyCatalog",
    "ItemDoc",
    "Lexicon",
    "LexiconError",
    "SEED_TYPES",
    "ScoreWeights",
    "Span",
    "TaggedText",
    "build_item_doc",
    "build_item_docs",
    "ner_tag",
    "rank",
    "score",
    "search",
]
