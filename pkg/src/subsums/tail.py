"""Cardinal functions of a finite prefix followed by the tail c/2, c/4, ...

For the bare tail the count at t is 1 at the endpoints 0 and c, 2 at interior
points with t/c dyadic, 1 at other interior points and 0 outside [0, c].
Adjoining a term y turns f(x) into f(x) + f(x - y), so for a prefix the count
is a sum of that base count over the shifted copies sigma_S, one per subset
S of the prefix (kept with multiplicity).

The range over all real x is read off a sweep of the breakpoints sigma_S and
sigma_S + c.  On an open gap between breakpoints, let N be the number of
active shifts.  Shifts whose differences are dyadic multiples of c form
classes; a point picks up the +1 bonus from exactly the shifts of one class
(or from none), so the gap contributes N and N + n_j for each class size n_j.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .arith import RangeSet, finite, is_power_of_two
from .config import DEFAULT_LIMITS
from .errors import ResourceLimitError, Unsupported
from .enumeration import integer_profile
from .sequences import Geometric, SequenceSpec


def base_count(t: Fraction, c: Fraction) -> int:
    """Representations of t by c/2, c/4, ..."""
    if t < 0 or t > c:
        return 0
    if t == 0 or t == c:
        return 1
    return 2 if is_power_of_two((t / c).denominator) else 1


def _require_geometric(spec: SequenceSpec) -> Fraction:
    if not isinstance(spec.tail, Geometric):
        raise Unsupported(f"needs a geometric tail, got {spec.tail_kind!r}")
    return spec.tail.c


def _check_prefix(prefix, limit):
    if len(prefix) > limit:
        raise ResourceLimitError(f"prefix of length {len(prefix)} exceeds limit {limit}",
                                 estimate=2 ** len(prefix))


@lru_cache(maxsize=256)
def shift_multiset(prefix: tuple) -> tuple:
    """Sorted (sigma, multiplicity) pairs over all subsets of the prefix."""
    if not prefix:
        return ((Fraction(0), 1),)
    den = lcm(*(p.denominator for p in prefix))
    prof = integer_profile([int(p * den) for p in prefix])
    return tuple((Fraction(s, den), m) for s, m in sorted(prof.items()))


def point_count(spec: SequenceSpec, x, limit: int = DEFAULT_LIMITS.max_prefix_length):
    """Exact f(x); ``finite(0)`` when x lies outside the achievement set."""
    c = _require_geometric(spec)
    _check_prefix(spec.prefix, limit)
    x = Fraction(x)
    total = 0
    for sigma, mult in shift_multiset(spec.prefix):
        if sigma > x:
            break
        total += mult * base_count(x - sigma, c)
    return finite(total)


def _odd_part(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


def _next_odd_prime(n: int) -> int:
    p = max(3, n + 1)
    p += p % 2 == 0
    while any(p % d == 0 for d in range(3, int(p ** 0.5) + 1, 2)):
        p += 2
    return p


def _sweep(spec: SequenceSpec, limit: int, want_witnesses: bool):
    c = _require_geometric(spec)
    _check_prefix(spec.prefix, limit)
    # integer units: shifts, c and every breakpoint become integers
    den = lcm(c.denominator, *(p.denominator for p in spec.prefix))
    C = int(c * den)
    C_odd = _odd_part(C)
    shifts = integer_profile([int(p * den) for p in spec.prefix])

    starts = shifts
    ends = {s + C: m for s, m in shifts.items()}
    points = sorted(set(starts) | set(ends))

    active = 0
    by_class = Counter()       # class key -> multiplicity of active shifts
    sizes = Counter()          # class size -> number of classes of that size
    rep = {}                   # class key -> one active shift, for witnesses
    found = {}                 # value -> witness (in integer units)

    def note(value, where):
        if value > 0 and value not in found:
            found[value] = where

    def move(key, delta, s):
        old = by_class[key]
        if old:
            sizes[old] -= 1
            if not sizes[old]:
                del sizes[old]
        new = old + delta
        if new:
            by_class[key] = new
            sizes[new] += 1
            rep[key] = s
        else:
            del by_class[key]
            rep.pop(key, None)

    for i, b in enumerate(points):
        n_end = ends.get(b, 0)
        n_start = starts.get(b, 0)
        # shifts ending at b sit in b's class but only count once there
        note(active + by_class.get(b % C_odd, 0) - n_end + n_start, Fraction(b))
        if n_end:
            active -= n_end
            move((b - C) % C_odd, -n_end, b - C)
        if n_start:
            active += n_start
            move(b % C_odd, n_start, b)
        if not active or i + 1 == len(points):
            continue
        lo, hi = b, points[i + 1]
        if want_witnesses:
            if active not in found:
                p = _next_odd_prime(hi - lo)
                found[active] = lo + Fraction(hi - lo, p)
            for key, size in by_class.items():
                if active + size not in found:
                    found[active + size] = _dyadic_point(rep[key], C, lo, hi)
        else:
            note(active, None)
            for size in sizes:
                note(active + size, None)
    return den, found


def _dyadic_point(sigma: int, C: int, lo: int, hi: int) -> Fraction:
    """A point sigma + C*d strictly inside (lo, hi) with d dyadic."""
    k = 0
    while (hi - lo) << k <= 2 * C:
        k += 1
    m = ((lo - sigma) << k) // C + 1
    x = sigma + Fraction(C * m, 1 << k)
    assert lo < x < hi
    return x


def range_exact(spec: SequenceSpec, limit: int = DEFAULT_LIMITS.max_prefix_length) -> RangeSet:
    """The exact range of the cardinal function over all real x."""
    _, found = _sweep(spec, limit, want_witnesses=False)
    return RangeSet(frozenset(found))


def range_witnesses(spec: SequenceSpec, limit: int = DEFAULT_LIMITS.max_prefix_length) -> dict:
    """One rational point per range value where ``point_count`` attains it."""
    den, found = _sweep(spec, limit, want_witnesses=True)
    return {v: x / den for v, x in sorted(found.items())}


def max_count(spec: SequenceSpec, limit: int = DEFAULT_LIMITS.max_prefix_length) -> int:
    return range_exact(spec, limit).max()


def shift_classes(spec: SequenceSpec) -> dict:
    """Group distinct prefix shifts by dyadic-offset class (keyed by a representative)."""
    c = _require_geometric(spec)
    out = {}
    for sigma, mult in shift_multiset(spec.prefix):
        for r in out:
            if is_power_of_two(((sigma - r) / c).denominator):
                out[r].append((sigma, mult))
                break
        else:
            out[sigma] = [(sigma, mult)]
    return out

