"""The twelve acceptance criteria, one test each.

Every test records its outcome in ``conftest.CRITERIA`` and prints a
``CRITERION n PASS/FAIL`` line; the terminal summary repeats them all.
"""
import os
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

import conftest
from oracles import (
    count_by_truncation, random_geometric_spec, random_interval_filling, truncation_depth,
    vector_range,
)
from subsums import RangeSet, SequenceSpec, Unsupported, point_count, range_exact, range_of
from subsums.combinators import adjoin_total_sum, cis_contains, scale_concat
from subsums.fsearch import SearchBounds, binomial_exclusion, search_ranges
from subsums.gn import DigitString, gn_count, gn_paths, gn_prefix_count, pattern_check
from subsums.kakeya import analyze, implied_constraints
from subsums.rationalizer import SymbolicSequence, rationalize, symbolic_range
from subsums.table import COLUMNS, NO, UNDECIDED, YES, published_table, table_report

F = Fraction
R = RangeSet.parse
SEED = 20240611


@contextmanager
def criterion(n, note=""):
    try:
        yield
    except pytest.skip.Exception:
        raise
    except BaseException:
        conftest.CRITERIA[n] = ("FAIL", note)
        print(f"CRITERION {n} FAIL")
        raise
    conftest.CRITERIA[n] = ("PASS", note)
    print(f"CRITERION {n} PASS")


# -- frozen expected values --------------------------------------------------------

# (x, count) for prefix [3/4] and for prefix [1/3], tail 1/2, 1/4, ...
PIECEWISE_3_4 = [("0", 1), ("1/2", 2), ("1/4", 2), ("1/3", 1), ("3/4", 3), ("7/8", 4),
                 ("4/5", 2), ("1", 3), ("5/4", 2), ("4/3", 1), ("7/4", 1)]
PIECEWISE_1_3 = [("0", 1), ("1/4", 2), ("1/5", 1), ("1/3", 2), ("1/2", 3), ("7/12", 3),
                 ("2/5", 2), ("1", 2), ("13/12", 2), ("11/10", 1), ("4/3", 1)]

RANGE_FIXTURES = [([], "{1,2}"), (["1/3"], "{1,2,3}"), (["3/4"], "{1,2,3,4}"),
                  (["2/3", "2/3"], "{1,2,3,4,5}"), (["1/2", "1/2"], "{1,2,3,4,6}"),
                  (["3/4", "3/4"], "{1,2,3,4,5,6}")]

FINITE_MEMBERS = ["{1}", "{1,2}", "{1,3}", "{1,2,3}", "{1,2,4}", "{1,3,4}", "{1,2,3,4}",
                  "{1,2,3,5}", "{1,2,4,5}", "{1,3,6}", "{1,4,6}", "{1,2,3,6}", "{1,2,4,6}",
                  "{1,3,4,6}", "{1,4,5,6}", "{1,2,3,4,6}", "{1,2,4,5,6}", "{1,3,4,5,6}",
                  "{1,2,3,4,5,6}"]

# the three families covered by the central binomial certificate for k = 4, 5, 6
EXCLUDED_FAMILIES = [{1, 4, 5}, {1, 5, 6, 7, 8, 9}, {1} | set(range(6, 20))]

GN_COUNTS = [("11/12", 2), ("7/6", 1), ("1/4", 1), ("3/64", 2), ("185/192", 2), ("3/4", 2)]
GN_PREFIX_COUNTS = [(["11/12", "11/12"], "11/6", 5), (["11/12", "11/12"], "11/12", 4),
                    (["11/12", "11/12"], "7/6", 3), (["11/12", "11/12"], "361/192", 6),
                    (["3/4"], "15/16", 4)]


def test_criterion_1_piecewise_fixtures():
    with criterion(1):
        start = time.perf_counter()
        for prefix, table in ((["3/4"], PIECEWISE_3_4), (["1/3"], PIECEWISE_1_3)):
            spec = SequenceSpec.geometric(prefix)
            for x, expected in table:
                assert point_count(spec, F(x)).n == expected, (prefix, x)
        assert time.perf_counter() - start < 1.0


def test_criterion_2_range_fixtures():
    with criterion(2):
        for prefix, expected in RANGE_FIXTURES:
            assert range_exact(SequenceSpec.geometric(prefix)) == R(expected), prefix


def test_criterion_3_sharp_bound():
    with criterion(3):
        spec = SequenceSpec.geometric([3, 3, 1, 1])
        assert analyze(spec).strict_set == {1, 3}
        assert range_exact(spec).max() == 8 == 2 ** (2 + 1)


def test_criterion_4_constraint_suite():
    with criterion(4, "10000 specs"):
        rng = random.Random(SEED)
        start = time.perf_counter()
        bad = []
        for _ in range(10_000):
            spec = random_interval_filling(rng, max_len=6, max_den=64)
            assert len(spec.prefix) <= 6
            assert all(p.denominator <= 64 for p in spec.prefix)
            rngset = range_exact(spec)
            bad += [(spec, str(c)) for c in implied_constraints(spec) if not c.holds(rngset)]
        assert bad == []
        assert time.perf_counter() - start < 120


def test_criterion_5_truncation_oracle():
    with criterion(5, "1000 pairs"):
        rng = random.Random(SEED + 5)
        pairs = 0
        while pairs < 1000:
            spec = random_geometric_spec(rng, max_len=4, max_den=12)
            c = spec.tail.c
            total = spec.total_sum
            x = total * F(rng.randint(-4, 68), 64) if rng.random() < 0.5 \
                else c * F(rng.randint(0, 96), 32)
            d = truncation_depth(spec, x)
            expected = count_by_truncation(spec, x, d)
            assert expected == count_by_truncation(spec, x, d + 1)
            assert point_count(spec, x).n == expected, (spec, x)
            pairs += 1


def test_criterion_6_finite_search():
    cpus = os.cpu_count() or 1
    note = "byte-identical for 1 and 4 workers; " + (
        "speedup checked separately" if cpus >= 8 else f"speedup not measured on {cpus} CPU")
    with criterion(6, note):
        bounds = SearchBounds(8, 12, 40)
        start = time.perf_counter()
        serial = search_ranges(bounds, workers=1)
        assert time.perf_counter() - start < 600
        for m in FINITE_MEMBERS:
            wit = serial.get(R(m))
            assert wit is not None, m
            assert range_of(wit.sequence) == R(m)
        for m, marks in published_table():
            if marks["F"] == NO and m.max() <= 6:
                assert m not in serial, str(m)
        parallel = search_ranges(bounds, workers=4)
        assert serial.to_json() == parallel.to_json()


@pytest.mark.skipif((os.cpu_count() or 1) < 8, reason="speedup needs 8 cores to measure")
def test_criterion_6_parallel_speedup():
    bounds = SearchBounds(8, 12, 40)
    start = time.perf_counter()
    search_ranges(bounds, workers=1)
    serial = time.perf_counter() - start
    start = time.perf_counter()
    search_ranges(bounds, workers=8)
    parallel = time.perf_counter() - start
    assert serial / parallel > 4


def test_criterion_7_binomial_exclusion():
    with criterion(7):
        certified = []
        for m, marks in published_table():
            rest = m.finites - {1}
            covered = bool(rest) and any(m.finites <= fam for fam in EXCLUDED_FAMILIES)
            assert binomial_exclusion(m) is covered, str(m)
            if covered:
                assert marks["F"] == NO
                certified.append(str(m))
        assert sorted(certified) == sorted(["{1,4}", "{1,5}", "{1,4,5}", "{1,6}", "{1,5,6}"])
        for m in FINITE_MEMBERS:
            assert binomial_exclusion(R(m)) is False, m


def test_criterion_8_cantorval_fixtures():
    with criterion(8):
        start = time.perf_counter()
        for x, expected in GN_COUNTS:
            assert gn_count(x).n == expected, x
        for prefix, x, expected in GN_PREFIX_COUNTS:
            assert gn_prefix_count(SequenceSpec.gn(prefix), x).n == expected, (prefix, x)
        assert time.perf_counter() - start < 1.0


def test_criterion_9_cantorval_property():
    with criterion(9, "10000 points of the Cantorval"):
        rng = random.Random(SEED + 9)
        twos = 0
        for i in range(10_000):
            # alternate denominators 4^m and 3*4^m
            pre = tuple(rng.choice((0, 2, 3, 5)) for _ in range(rng.randint(1, 8)))
            period = () if i % 2 == 0 else (rng.choice((2, 3, 5)),)
            x = DigitString(pre, period).value()
            assert 0 <= x <= F(5, 3)
            count = gn_count(x)
            assert count.is_finite and count.n in (1, 2), x
            if count.n == 2:
                twos += 1
                a, b = gn_paths(x)
                verdict = pattern_check(a, b)
                assert verdict.equal_values and verdict.matches_pattern, (x, str(a), str(b))
        assert twos > 0


def _random_symbolic(rng):
    s = rng.randint(1, 3)
    while True:
        rows = []
        for _ in range(rng.randint(1, 5)):
            row = tuple(F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(s))
            if any(row):
                rows.append(row)
        if rows:
            return SymbolicSequence(s, tuple(rows))


def test_criterion_10_rationalizer():
    with criterion(10, "1000 accepted instances"):
        rng = random.Random(SEED + 10)
        accepted = 0
        while accepted < 1000:
            seq = _random_symbolic(rng)
            try:
                ints = rationalize(seq)
            except Unsupported:
                continue
            accepted += 1
            assert all(v > 0 for v in ints)
            assert range_of(ints) == symbolic_range(seq)
            assert range_of(ints).finites == vector_range(seq.entries)


def test_criterion_11_combinator_laws():
    with criterion(11, "1000 instances per law"):
        rng = random.Random(SEED + 11)
        for _ in range(1000):
            spec = random_geometric_spec(rng, max_len=3, max_den=8)
            head = [rng.randint(1, 6) for _ in range(rng.randint(1, 4))]
            assert range_exact(scale_concat(head, spec)) == range_of(head) * range_exact(spec)
        for _ in range(1000):
            spec = random_geometric_spec(rng, max_len=4, max_den=8)
            before = range_exact(spec)
            after = range_exact(adjoin_total_sum(spec))
            assert after == RangeSet(before.finites | {2})
        base = SequenceSpec.geometric()
        assert cis_contains(base, 1) is True
        assert cis_contains(base, F(3, 4)) is False
        assert cis_contains(base, 2) is True


def test_criterion_12_table():
    with criterion(12):
        report = table_report(SearchBounds(8, 12, 40))
        assert report.contradictions() == []
        for m, marks in published_table():
            row = report.row(m)
            for col in COLUMNS:
                cell = row.cells[col]
                if cell.verdict == UNDECIDED:
                    assert cell.outcome in ("open", "undecided")
                elif marks[col] is not None:
                    assert cell.verdict == marks[col], (str(m), col)
            if marks["I1"] == YES:
                assert row.cells["I1"].verdict == YES and "prefix" in row.cells["I1"].basis
            if marks["F"] == YES:
                assert row.cells["F"].verdict == YES and "witness" in row.cells["F"].basis
            if marks["F"] == NO and binomial_exclusion(m):
                assert row.cells["F"].verdict == NO
            if marks["Cv"] == YES:
                assert row.cells["Cv"].verdict == YES and row.cells["Cv"].detail["points"]
