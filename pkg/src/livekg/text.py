"""Tokenization shared by the encoder, the query tagger and FAQ matching.

Mixed Chinese/ASCII product text is split into one token per non-ASCII
character plus whitespace-delimited ASCII words, so "补水 face cream"
becomes ["补", "水", "face", "cream"]. ASCII is lowercased; punctuation
becomes single-character tokens so no input text is silently dropped.
"""

from __future__ import annotations


def tokenize(text: str) -> list[str]:
    """Split text into CJK characters, ASCII words and punctuation tokens."""
    tokens: list[str] = []
    word: list[str] = []

    def flush() -> None:
        if word:
            tokens.append("".join(word))
            word.clear()

    for ch in text:
        if ch.isspace():
            flush()
        elif ord(ch) < 128:
            if ch.isalnum():
                word.append(ch.lower())
            else:
                flush()
                tokens.append(ch)
        else:
            # non-ASCII (CJK and friends): one token per character
            flush()
            tokens.append(ch)
    flush()
    return tokens
