"""Bounded exhaustive search for finite integer sequences realising range sets.

A range set found here is certified to be the range of some finite
sequence.  Absence from the results means only that no witness exists
within the bounds.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Dict, Optional

from .arith import RangeSet
from .config import DEFAULT_LIMITS
from .errors import InvalidArgument, ResourceLimitError, Unsupported
from .enumeration import integer_profile


@dataclass(frozen=True)
class SearchBounds:
    """Limits on length, largest term and total sum; at most one may be None."""

    max_length: Optional[int] = None
    max_term: Optional[int] = None
    max_sum: Optional[int] = None

    def __post_init__(self):
        given = [b for b in (self.max_length, self.max_term, self.max_sum) if b is not None]
        if len(given) < 2:
            raise InvalidArgument("at least two of max_length, max_term, max_sum must be set")
        if any(b < 1 for b in given):
            raise InvalidArgument("search bounds must be at least 1")

    def resolved(self) -> tuple:
        """(length, term, sum) with the missing bound derived from the other two."""
        length, term, total = self.max_length, self.max_term, self.max_sum
        if total is None:
            total = length * term
        if length is None:
            length = total
        if term is None:
            term = total
        return length, min(term, total), total

    def to_json(self) -> dict:
        length, term, total = self.resolved()
        return {"max_length": length, "max_term": term, "max_sum": total}


@dataclass(frozen=True)
class Witness:
    sequence: tuple
    range: RangeSet
    profile: tuple      # (sum, count) pairs, sorted by sum

    @classmethod
    def of(cls, sequence) -> "Witness":
        prof = integer_profile(sequence)
        return cls(tuple(sequence), RangeSet(frozenset(prof.values())), tuple(sorted(prof.items())))

    def check(self) -> bool:
        return Witness.of(self.sequence) == self

    def to_json(self) -> dict:
        return {"sequence": list(self.sequence), "range": self.range.to_json(),
                "profile": {str(s): c for s, c in self.profile}}


def candidate_count(bounds: SearchBounds, cap: Optional[int] = None) -> int:
    """Exact number of nondecreasing tuples within bounds (saturating at cap + 1)."""
    length, term, total = bounds.resolved()
    if (length + 1) * (total + 1) > 20_000_000:
        raise ResourceLimitError("bounds too large to size the search", estimate=None)
    # ways[l][s]: multisets of size l with sum s over the values seen so far
    ways = [[0] * (total + 1) for _ in range(length + 1)]
    ways[0][0] = 1
    for t in range(1, term + 1):
        for l in range(1, length + 1):
            row, prev = ways[l], ways[l - 1]
            for s in range(t, total + 1):
                if prev[s - t]:
                    row[s] += prev[s - t]
                    if cap is not None and row[s] > cap:
                        row[s] = cap + 1
    n = sum(sum(row) for row in ways[1:])
    return n if cap is None else min(n, cap + 1)


def _extend(counts, t, total):
    new = counts + [0] * t
    for s in range(total, -1, -1):
        c = counts[s]
        if c:
            new[s + t] += c
    return new


def _search_from(start: tuple, bounds: tuple) -> tuple:
    """DFS over nondecreasing extensions of *start*; start itself is included.

    Returns ({range: lex-first sequence}, nodes visited). Preorder is lexicographic,
    so the first sequence to show a range is the smallest one in this subtree.
    No profile-based pruning: the subsum profile of positive integers determines
    the multiset, so distinct nondecreasing tuples never share a profile.
    """
    length, term, total_cap = bounds
    counts = [1]
    total = 0
    for t in start:
        counts = _extend(counts, t, total)
        total += t
    found = {}
    visited = 0
    seq = list(start)

    def record(cnts):
        key = frozenset(c for c in cnts if c)
        if key not in found:
            found[key] = tuple(seq)

    def rec(cnts, last, tot):
        nonlocal visited
        for t in range(last, term + 1):
            if tot + t > total_cap:
                break
            new = _extend(cnts, t, tot)
            seq.append(t)
            visited += 1
            record(new)
            if len(seq) < length:
                rec(new, t, tot + t)
            seq.pop()

    visited += 1
    record(counts)
    if len(seq) < length:
        rec(counts, start[-1], total)
    return found, visited


def _partitions(bounds: tuple) -> list:
    """Work units: every pair (t1, t2) that fits, plus bare singletons."""
    length, term, total = bounds
    units = []
    for t1 in range(1, min(term, total) + 1):
        units.append((t1,))
    if length >= 2:
        for t1 in range(1, min(term, total) + 1):
            for t2 in range(t1, min(term, total - t1) + 1):
                units.append((t1, t2))
    return units


def _run_unit(args):
    unit, bounds = args
    if len(unit) == 1:
        counts = integer_profile(unit)
        return {frozenset(counts.values()): unit}, 1
    return _search_from(unit, bounds)


@dataclass
class SearchResult:
    bounds: SearchBounds
    witnesses: Dict[RangeSet, Witness]
    visited: int

    def get(self, rng: RangeSet) -> Optional[Witness]:
        return self.witnesses.get(rng)

    def __contains__(self, rng) -> bool:
        return rng in self.witnesses

    def sorted_items(self) -> list:
        return sorted(self.witnesses.items(), key=lambda kv: (max(kv[0].finites), kv[0].sorted()))

    def to_json(self) -> dict:
        return {
            "bounds": self.bounds.to_json(),
            "visited": self.visited,
            "ranges": {str(r): list(w.sequence) for r, w in self.sorted_items()},
        }


def search_ranges(bounds: SearchBounds, workers: int = 1,
                  max_candidates: int = DEFAULT_LIMITS.max_search_candidates) -> SearchResult:
    """Every range realised by a nondecreasing tuple within *bounds*, with the
    lexicographically smallest tuple realising it.

    Output is identical for any worker count: units are fixed by the first two
    terms and merged by taking the smaller witness.
    """
    estimate = candidate_count(bounds, cap=max_candidates)
    if estimate > max_candidates:
        raise ResourceLimitError(
            f"more than {max_candidates} candidate tuples within {bounds.to_json()}",
            estimate=estimate)
    b = bounds.resolved()
    units = [(u, b) for u in _partitions(b)]
    if workers > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_unit, units, chunksize=max(1, len(units) // (8 * workers))))
    else:
        parts = [_run_unit(u) for u in units]

    best = {}
    visited = 0
    for found, n in parts:
        visited += n
        for key, seq in found.items():
            if key not in best or seq < best[key]:
                best[key] = seq
    witnesses = {RangeSet(k): Witness.of(s) for k, s in best.items()}
    return SearchResult(bounds, witnesses, visited)


def default_workers() -> int:
    from .config import thread_cap

    return max(1, min(thread_cap(), os.cpu_count() or 1))


def binomial_exclusion(m: RangeSet) -> bool:
    """True when M = {1} + A is certified never to be the range of a finite sequence.

    The certificate needs k = min A >= 4 and max A below the central binomial
    coefficient C(k, floor(k/2)).
    """
    if not m.is_finite:
        raise Unsupported("exclusion test needs a finite range set")
    if 1 not in m.finites:
        raise InvalidArgument("range sets always contain 1")
    rest = m.finites - {1}
    if not rest:
        return False
    k = min(rest)
    return k >= 4 and max(rest) <= comb(k, k // 2) - 1
