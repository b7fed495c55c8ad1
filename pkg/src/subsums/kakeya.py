"""Tail sums, interval-filling classification and the range constraints they imply.

Indices are 1-based positions in the canonical order: prefix terms merged
into the tail by nonincreasing value, prefix first on ties.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice

from .arith import RangeSet
from .errors import InvalidArgument
from .sequences import SequenceSpec

FINITE = "finite"
INTERVAL_FILLING = "interval_filling"
UNION_OF_INTERVALS = "union_of_intervals"
CANTORVAL = "cantorval"

# indices past the prefix region shown for GN tails, whose strict set is infinite
GN_LOOKAHEAD = 4


def tail_sum(spec: SequenceSpec, n: int) -> Fraction:
    """r_n: the sum of all canonical terms after position n (r_0 is the total)."""
    if n < 0:
        raise InvalidArgument("index must be nonnegative")
    return spec.total_sum - sum(islice(spec.canonical_terms(), n), Fraction(0))


def _rows(spec: SequenceSpec, count: int):
    """(n, x_n, r_n) for the first *count* canonical positions."""
    r = spec.total_sum
    for n, x in enumerate(islice(spec.canonical_terms(), count), 1):
        r -= x
        yield n, x, r


def _inspected_length(spec: SequenceSpec) -> int:
    if spec.tail is None:
        return len(spec.prefix)
    if spec.tail_kind == "geometric":
        # past the last prefix term every x_n equals r_n
        return spec.prefix_region()
    return spec.prefix_region() + GN_LOOKAHEAD


def _interval_components(spec: SequenceSpec) -> int:
    """Connected components of {prefix subsums} + [0, c]."""
    from .tail import shift_multiset

    c = spec.tail.c
    count, end = 0, None
    for sigma, _ in shift_multiset(spec.prefix):
        if end is None or sigma > end:
            count += 1
        end = sigma + c if end is None else max(end, sigma + c)
    return count


@dataclass(frozen=True)
class KakeyaReport:
    canonical_order: tuple          # the inspected leading terms
    tail_sums: tuple                # r_n for the same positions
    strict_set: frozenset
    classification: str
    interval_count: int | None = None
    truncated: bool = False         # strict_set lists only the inspected positions

    def to_json(self) -> dict:
        from .arith import format_rational

        return {
            "canonical_order": [format_rational(x) for x in self.canonical_order],
            "tail_sums": [format_rational(r) for r in self.tail_sums],
            "strict_set": sorted(self.strict_set),
            "strict_set_truncated": self.truncated,
            "classification": self.classification,
            "interval_count": self.interval_count,
        }


def analyze(spec: SequenceSpec) -> KakeyaReport:
    rows = list(_rows(spec, _inspected_length(spec)))
    order = tuple(x for _, x, _ in rows)
    sums = tuple(r for _, _, r in rows)
    strict = frozenset(n for n, x, r in rows if x < r)
    if spec.tail is None:
        return KakeyaReport(order, sums, strict, FINITE)
    if spec.tail_kind == "gn":
        return KakeyaReport(order, sums, strict, CANTORVAL, truncated=True)
    if all(x <= r for _, x, r in rows):
        return KakeyaReport(order, sums, strict, INTERVAL_FILLING, 1)
    return KakeyaReport(order, sums, strict, UNION_OF_INTERVALS, _interval_components(spec))


# -- constraints --------------------------------------------------------------

@dataclass(frozen=True)
class Constraint:
    """A checkable statement about the range of the cardinal function.

    kind is one of: upper_bound, lower_bound, contains, member_of,
    not_one_m, gap_rule, no_three_rule, no_four_rule.
    """

    kind: str
    params: tuple = ()
    anchor: str = ""
    reason: str = field(default="", compare=False)

    def holds(self, rng: RangeSet) -> bool:
        check = _CHECKS[self.kind]
        return check(rng, *self.params)

    def to_json(self) -> dict:
        params = [sorted(p) if isinstance(p, frozenset) else p for p in self.params]
        return {"kind": self.kind, "params": params, "anchor": self.anchor,
                "reason": self.reason}

    def __str__(self):
        return f"{self.kind}{tuple(self.to_json()['params'])} [{self.anchor}]"


def _upper(rng, bound):
    return rng.is_finite and rng.max() <= bound


def _lower(rng, bound):
    return not rng.is_finite or rng.max() >= bound


def _contains(rng, value):
    return value in rng


def _member_of(rng, *options):
    return rng.is_finite and rng.finites in options


def _not_one_m(rng):
    return not (rng.is_finite and len(rng.finites) == 2 and 1 in rng.finites
                and max(rng.finites) >= 3)


def _gap_rule(rng):
    # 3, ..., m all missing forces max >= 2m
    if not rng.is_finite or rng.finites == {1, 2}:
        return True
    big = [v for v in rng.finites if v >= 3]
    if not big:
        return True
    m = min(big) - 1
    return m < 3 or rng.max() >= 2 * m


def _no_three_rule(rng):
    if not rng.is_finite or rng.finites == {1, 2} or 3 in rng.finites:
        return True
    return rng.max() >= 7


def _no_four_rule(rng):
    if not rng.is_finite or 4 in rng.finites or rng.max() < 5:
        return True
    return rng.max() >= 7


_CHECKS = {
    "upper_bound": _upper,
    "lower_bound": _lower,
    "contains": _contains,
    "member_of": _member_of,
    "not_one_m": _not_one_m,
    "gap_rule": _gap_rule,
    "no_three_rule": _no_three_rule,
    "no_four_rule": _no_four_rule,
}


def range_level_constraints() -> list:
    """Constraints on bounded single-interval ranges that need no sequence data."""
    return [
        Constraint("not_one_m", (), "no {1,m} with m >= 3 fills an interval",
                   "an interval-filling range is never {1,m} for m >= 3"),
        Constraint("gap_rule", (), "missing 3..m forces max >= 2m",
                   "if 3, ..., m are absent (m >= 3) the maximum is at least 2m"),
        Constraint("no_three_rule", (), "missing 3 forces max >= 7",
                   "a range other than {1,2} without 3 reaches 7"),
        Constraint("no_four_rule", (), "missing 4 with max >= 5 forces max >= 7",
                   "without 4, a maximum of at least 5 is at least 7"),
    ]


def _two_strict_pair(rows):
    strict = [(n, x, r) for n, x, r in rows if x < r]
    for n_m, x_m, _ in strict:
        for n_k, x_k, r_k in rows:
            if n_k < n_m and x_k + x_m < r_k:
                return n_k, n_m
    return None


def _repeated_term(spec: SequenceSpec):
    """A value occurring twice in a row in the canonical order, if any."""
    prev = None
    for n, x in enumerate(islice(spec.canonical_terms(), spec.prefix_region() + 1), 1):
        if x == prev:
            return n - 1
        prev = x
    return None


def implied_constraints(spec: SequenceSpec) -> list:
    """Constraints the range of a geometric-tail spec must satisfy.

    Interval-filling specs get the full list; other geometric-tail specs only
    the subset that does not need a single interval.
    """
    if spec.tail_kind != "geometric":
        raise InvalidArgument("constraints are derived for geometric tails only")
    report = analyze(spec)
    out = [Constraint("contains", (2,), "bounded tail forces 2",
                      "points just above 0 are dyadic multiples of the tail sum")]
    rep = _repeated_term(spec)
    if rep is not None:
        out.append(Constraint("lower_bound", (4,), "repeated term forces 4",
                              f"x_{rep} = x_{rep + 1}"))
    if report.classification != INTERVAL_FILLING:
        return out

    k = len(report.strict_set)
    out.append(Constraint("upper_bound", (2 ** (k + 1),), "strict-count upper bound",
                          f"{k} strict inequalities"))
    if k:
        out.append(Constraint("lower_bound", (3,), "a strict inequality forces 3",
                              f"x_n < r_n at n = {min(report.strict_set)}"))
    if k == 1:
        out.append(Constraint("member_of", (frozenset({1, 2, 3}), frozenset({1, 2, 3, 4})),
                              "one strict inequality", "exactly one strict inequality"))
    rows = list(zip(range(1, len(report.canonical_order) + 1),
                    report.canonical_order, report.tail_sums))
    pair = _two_strict_pair(rows)
    if pair is not None:
        out.append(Constraint("lower_bound", (4,), "two compatible strict inequalities",
                              f"k = {pair[0]}, m = {pair[1]}"))
    out.extend(range_level_constraints())
    return out


def violations(spec: SequenceSpec, rng: RangeSet) -> list:
    return [c for c in implied_constraints(spec) if not c.holds(rng)]
