"""Ranking metrics."""

from bisect import bisect_left, bisect_right
from fractions import Fraction

from .errors import SingleClass

__all__ = ["auc", "auc_fraction"]


def auc_fraction(scores, labels) -> Fraction:
    """Exact Mann-Whitney AUC: P(score+ > score-) + 0.5 * P(tie).

    Computed from sorted negatives with binary search, so it stays exact
    (integer win counts over an integer pair count) without the quadratic
    pairwise sweep.
    """
    if len(scores) != len(labels):
        raise ValueError("scores and labels must have equal length")
    pos, neg = [], []
    for score, label in zip(scores, labels):
        if label not in (0, 1, False, True):
            raise ValueError(f"labels must be 0 or 1, got {label!r}")
        (pos if label else neg).append(float(score))
    if not pos or not neg:
        raise SingleClass("AUC needs at least one positive and one negative")
    neg.sort()
    wins_doubled = 0
    for score in pos:
        below = bisect_left(neg, score)
        tied = bisect_right(neg, score) - below
        wins_doubled += 2 * below + tied
    return Fraction(wins_doubled, 2 * len(pos) * len(neg))


def auc(scores, labels) -> float:
    return float(auc_fraction(scores, labels))
