"""Cardinal profiles of finite sequences.

This is the ground truth everything else is checked against: a subset-sum
count over the multiset of terms, done on integers after clearing
denominators.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import lcm
from typing import Dict, Sequence

from .arith import RangeSet, parse_rational
from .config import DEFAULT_LIMITS
from .errors import InvalidArgument, ResourceLimitError


def as_terms(terms) -> tuple:
    """Validate a finite sequence: nonempty, every term a positive rational."""
    out = tuple(parse_rational(t) for t in terms)
    if not out:
        raise InvalidArgument("a finite sequence needs at least one term")
    if any(t <= 0 for t in out):
        raise InvalidArgument("terms must be positive")
    return out


def integer_profile(ints: Sequence[int]) -> Dict[int, int]:
    """Map each subset sum of *ints* to the number of subsets producing it."""
    counts = {0: 1}
    for t in ints:
        nxt = dict(counts)
        for s, c in counts.items():
            nxt[s + t] = nxt.get(s + t, 0) + c
        counts = nxt
    return counts


def _scaled(terms):
    den = lcm(*(t.denominator for t in terms))
    return den, [int(t * den) for t in terms]


def profile(terms, limit: int = DEFAULT_LIMITS.max_finite_length) -> Dict[Fraction, int]:
    """Exact representation count of every subsum of a finite sequence.

    >>> sorted(profile([1, 1]).items())
    [(Fraction(0, 1), 1), (Fraction(1, 1), 2), (Fraction(2, 1), 1)]
    """
    terms = as_terms(terms)
    if len(terms) > limit:
        raise ResourceLimitError(f"sequence of length {len(terms)} exceeds limit {limit}",
                                 estimate=2 ** len(terms))
    den, ints = _scaled(terms)
    return {Fraction(s, den): c for s, c in integer_profile(ints).items()}


def range_of(terms, limit: int = DEFAULT_LIMITS.max_finite_length) -> RangeSet:
    return RangeSet(frozenset(profile(terms, limit).values()))


def subsums(terms, limit: int = DEFAULT_LIMITS.max_finite_length) -> list:
    """Sorted distinct subsums."""
    return sorted(profile(terms, limit))


def min_gap(terms, limit: int = DEFAULT_LIMITS.max_finite_length) -> Fraction:
    """Smallest distance between two consecutive points of the achievement set."""
    pts = subsums(terms, limit)
    return min(b - a for a, b in zip(pts, pts[1:]))


def count_by_subsets(terms) -> Counter:
    """Bitmask enumeration of all 2^n subsets; slow, only used to cross-check."""
    terms = as_terms(terms)
    out = Counter()
    n = len(terms)
    for mask in range(1 << n):
        out[sum((terms[i] for i in range(n) if mask >> i & 1), Fraction(0))] += 1
    return out
