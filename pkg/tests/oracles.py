"""Independent reference computations and random generators shared by the tests.

None of these call the engines they are used to check.
"""
from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction
from itertools import product

from subsums.enumeration import profile
from subsums.sequences import SequenceSpec


def two_exponent(q: Fraction) -> int:
    """Exponent of 2 in the reduced denominator of q."""
    d = Fraction(q).denominator
    e = 0
    while d % 2 == 0:
        d //= 2
        e += 1
    return e


def truncation_depth(spec: SequenceSpec, x: Fraction) -> int:
    c = spec.tail.c
    return max([two_exponent(x / c)] + [two_exponent(p / c) for p in spec.prefix]) + 1


def count_by_truncation(spec: SequenceSpec, x, depth: int) -> int:
    """f(x) from the finite sequence prefix + c/2, ..., c/2^depth.

    The dropped tail sums to eps = c/2^depth.  Once depth exceeds the 2-adic
    size of x and of every prefix term (relative to c), a leftover x - s in
    [0, eps] is either an endpoint or not a dyadic multiple of c, so it has
    exactly one representation by the dropped terms.  The count is then the
    number of truncated subsums in the closed window [x - eps, x].
    """
    x = Fraction(x)
    c = spec.tail.c
    eps = c / 2 ** depth
    terms = list(spec.prefix) + [c / 2 ** k for k in range(1, depth + 1)]
    prof = profile(terms, limit=64)
    return sum(n for s, n in prof.items() if x - eps <= s <= x)


def gn_count_by_digits(x, depth: int) -> int:
    """Digit prefixes of length *depth* over {0,2,3,5} whose leftover fits the tail.

    This is an upper bound that settles once every dead branch has died.
    """
    x = Fraction(x)
    frontier = Counter({x: 1})
    for n in range(1, depth + 1):
        room = Fraction(5, 3) / 4 ** n
        nxt = Counter()
        for rem, k in frontier.items():
            for d in (0, 2, 3, 5):
                r = rem - Fraction(d, 4 ** n)
                if 0 <= r <= room:
                    nxt[r] += k
        frontier = nxt
    return sum(frontier.values())


def random_rational(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int) -> Fraction:
    den = rng.randint(1, max_den)
    a = -(-lo * den // 1)
    b = hi * den // 1
    if a > b:
        return lo
    return Fraction(rng.randint(int(a), int(b)), den)


def random_interval_filling(rng: random.Random, max_len: int = 6, max_den: int = 64,
                            c=Fraction(1)) -> SequenceSpec:
    """Grow a prefix in front of c/2^n keeping a single interval.

    Adjoining y with 0 < y <= (current total) keeps the achievement set an
    interval: [0, S] together with [y, y + S] is [0, S + y].
    """
    prefix = []
    total = Fraction(c)
    for _ in range(rng.randint(0, max_len)):
        kind = rng.random()
        if kind < 0.15 and prefix:
            y = rng.choice(prefix)
        elif kind < 0.3:
            y = Fraction(c) / 2 ** rng.randint(0, 6)
        elif kind < 0.35:
            y = total
        else:
            y = random_rational(rng, Fraction(1, max_den), total, max_den)
            if y <= 0:
                y = Fraction(1, max_den)
        if y > total:
            y = total
        if y.denominator > max_den:
            y = Fraction(c) / 2
        prefix.append(y)
        total += y
    return SequenceSpec.geometric(prefix, c)


def random_geometric_spec(rng: random.Random, max_len=4, max_den=12, max_term=Fraction(3)):
    prefix = [random_rational(rng, Fraction(1, max_den), max_term, max_den)
              for _ in range(rng.randint(0, max_len))]
    prefix = [p if p > 0 else Fraction(1, max_den) for p in prefix]
    c = rng.choice([Fraction(1), Fraction(1, 2), Fraction(3, 2), Fraction(2, 3), Fraction(5, 4)])
    return SequenceSpec.geometric(prefix, c)


def interesting_points(rng: random.Random, spec: SequenceSpec, count: int) -> list:
    """Mix of subsum shifts, dyadic offsets from them and arbitrary rationals."""
    from subsums.enumeration import subsums

    c = spec.tail.c
    shifts = subsums(spec.prefix) if spec.prefix else [Fraction(0)]
    total = spec.total_sum
    pts = []
    for _ in range(count):
        kind = rng.random()
        s = rng.choice(shifts)
        if kind < 0.4:
            x = s + c * Fraction(rng.randint(0, 2 ** 5), 2 ** rng.randint(0, 5))
        elif kind < 0.55:
            x = s + rng.choice([Fraction(0), c])
        else:
            x = random_rational(rng, Fraction(-1, 4), total + Fraction(1, 4), 24)
        pts.append(x)
    return pts


def vector_range(entries) -> set:
    """Range from explicit enumeration of all subsets of coordinate vectors."""
    n = len(entries)
    dim = len(entries[0])
    sums = Counter()
    for mask in product((0, 1), repeat=n):
        sums[tuple(sum((Fraction(e[j]) for e, m in zip(entries, mask) if m), Fraction(0))
                   for j in range(dim))] += 1
    return set(sums.values())
