"""Replace a finite sequence over formal basis symbols by positive integers with
the same cardinal-function range.

An entry is a coordinate vector (z_1, ..., z_s) standing for sum z_j b_j with
b_1, ..., b_s rationally independent.  Two subsets have equal sums exactly
when their coordinate sums agree, so the range only depends on vector
collisions.  The map b_j -> K^j keeps those collisions and creates no new ones
once K is large compared with every coordinate sum.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, lcm

from .arith import RangeSet, format_rational, parse_rational
from .config import DEFAULT_LIMITS
from .errors import InvalidArgument, ResourceLimitError, Unsupported
from .enumeration import range_of


@dataclass(frozen=True)
class SymbolicSequence:
    basis: int
    entries: tuple      # tuple of coordinate tuples of Fractions

    def __post_init__(self):
        if self.basis < 1:
            raise InvalidArgument("basis size must be at least 1")
        rows = tuple(tuple(parse_rational(z) for z in e) for e in self.entries)
        if not rows:
            raise InvalidArgument("a symbolic sequence needs at least one entry")
        for i, e in enumerate(rows):
            if len(e) != self.basis:
                raise InvalidArgument(f"entry {i} has {len(e)} coordinates, expected {self.basis}")
            if not any(e):
                raise InvalidArgument(f"entry {i} is the zero vector")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_json(cls, data) -> "SymbolicSequence":
        if not isinstance(data, dict) or "entries" not in data:
            raise InvalidArgument("symbolic spec needs 'basis' and 'entries'")
        entries = data["entries"]
        basis = data.get("basis", len(entries[0]) if entries else 0)
        if not isinstance(basis, int):
            raise InvalidArgument("'basis' must be an integer")
        return cls(basis, tuple(tuple(e) for e in entries))

    def to_json(self) -> dict:
        return {"basis": self.basis,
                "entries": [[format_rational(z) for z in e] for e in self.entries]}

    def digest(self) -> str:
        import hashlib

        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def _integer_coordinates(seq: SymbolicSequence):
    """Coordinates scaled by the common denominator (the range is unchanged)."""
    den = lcm(*(z.denominator for e in seq.entries for z in e))
    return den, [[int(z * den) for z in e] for e in seq.entries]


def base_for(seq: SymbolicSequence) -> int:
    """K = ceil(2 + 2 * sum of |coordinates|), taken on integer coordinates.

    On raw rational coordinates the bound can be too small: (5/4, 0) and
    (0, 1/4) give K = 5 and both map to 25/4.
    """
    _, rows = _integer_coordinates(seq)
    return ceil(2 + 2 * sum(abs(z) for e in rows for z in e))


def _separated(rows, k: int) -> bool:
    """Every difference of two subset sums has coordinates below K/2 in size,
    so distinct coordinate vectors cannot map to the same integer."""
    span = [sum(abs(e[j]) for e in rows) for j in range(len(rows[0]))]
    return all(2 * s < k for s in span)


def rationalize(seq: SymbolicSequence) -> tuple:
    """Positive integers whose subsum collisions mirror the symbolic ones."""
    _, rows = _integer_coordinates(seq)
    k = base_for(seq)
    if not _separated(rows, k):
        raise AssertionError(f"K = {k} does not separate coordinate sums")
    out = []
    for i, e in enumerate(rows):
        v = sum(z * k ** (j + 1) for j, z in enumerate(e))
        if v <= 0:
            raise Unsupported(f"entry {i} {[format_rational(z) for z in seq.entries[i]]} "
                              f"maps to a non-positive integer {v}")
        out.append(v)
    return tuple(out)


def symbolic_range(seq: SymbolicSequence, limit: int = DEFAULT_LIMITS.max_finite_length) -> RangeSet:
    """Range read off collisions among coordinate-vector subset sums."""
    n = len(seq.entries)
    if n > limit:
        raise ResourceLimitError(f"{n} entries exceed limit {limit}", estimate=2 ** n)
    zero = (Fraction(0),) * seq.basis
    sums = Counter({zero: 1})
    for e in seq.entries:
        nxt = Counter(sums)
        for s, c in sums.items():
            nxt[tuple(a + b for a, b in zip(s, e))] += c
        sums = nxt
    return RangeSet(frozenset(sums.values()))


def rationalized_range(seq: SymbolicSequence) -> RangeSet:
    return range_of(rationalize(seq))
