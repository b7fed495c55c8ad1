"""Ways of building new sequences from old ones while tracking the range."""
from __future__ import annotations

from fractions import Fraction

from .arith import RangeSet, parse_rational
from .config import DEFAULT_LIMITS
from .errors import InvalidArgument, Unsupported
from .enumeration import as_terms, min_gap
from .sequences import SequenceSpec
from .tail import range_exact


def adjoin(y, spec: SequenceSpec) -> SequenceSpec:
    """Add the term y in front of the sequence (appended to the prefix)."""
    y = parse_rational(y)
    if y <= 0:
        raise InvalidArgument("adjoined term must be positive")
    return spec.with_prefix(spec.prefix + (y,))


def adjoin_total_sum(spec: SequenceSpec) -> SequenceSpec:
    """Adjoin the total sum; the range gains 2 and nothing else."""
    return adjoin(spec.total_sum, spec)


def scale_factor(head, spec: SequenceSpec) -> Fraction:
    """Smallest power of two a with a * (min gap of the head's subsums) > total sum."""
    head = as_terms(head)
    gap = min_gap(head)
    total = spec.total_sum
    a = Fraction(1)
    while a * gap <= total:
        a *= 2
    while (a / 2) * gap > total:
        a /= 2
    return a


def scale_concat(head, spec: SequenceSpec) -> SequenceSpec:
    """Extend the prefix by a scaled copy of *head* spaced wider than the whole spec.

    The result's range is the elementwise product of the two ranges.
    """
    head = as_terms(head)
    a = scale_factor(head, spec)
    return spec.with_prefix(spec.prefix + tuple(a * h for h in head))


def cis_contains(spec: SequenceSpec, y, limit: int = DEFAULT_LIMITS.max_prefix_length) -> bool:
    """Does adjoining y leave the range unchanged?"""
    if spec.tail_kind != "geometric":
        raise Unsupported("membership is only decided for geometric tails")
    return range_exact(adjoin(y, spec), limit) == range_exact(spec, limit)


def cis_detail(spec: SequenceSpec, y, limit: int = DEFAULT_LIMITS.max_prefix_length) -> dict:
    """Both ranges behind a ``cis_contains`` answer."""
    if spec.tail_kind != "geometric":
        raise Unsupported("membership is only decided for geometric tails")
    before: RangeSet = range_exact(spec, limit)
    after: RangeSet = range_exact(adjoin(y, spec), limit)
    return {"contains": before == after, "range": before.to_json(), "range_after": after.to_json()}
