"""Which range sets with maximum at most 6 (and {1,3,5,7}) occur for each kind
of achievement set, decided where the engines can and compared with the
published summary table.

Columns: I1 single interval, I finite union of intervals, F finite set,
C Cantor set, Cv Cantorval, R any of these.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional

from .arith import RangeSet, format_rational
from .combinators import scale_concat
from .fsearch import SearchBounds, SearchResult, binomial_exclusion, search_ranges
from .gn import DigitString, gn_prefix_count
from .kakeya import range_level_constraints
from .sequences import SequenceSpec
from .tail import range_exact

COLUMNS = ("I1", "I", "F", "C", "Cv", "R")

YES, NO, UNDECIDED = "yes", "no", "undecided"

# Published verdicts: "+" constructed, "-" proved impossible, "." unknown.
PUBLISHED = """
{1}             - - + + - +
{1,2}           + + + + + +
{1,3}           - - + + . +
{1,2,3}         + + + + . +
{1,4}           - - - . . .
{1,2,4}         - + + + + +
{1,3,4}         - - + + . +
{1,2,3,4}       + + + + + +
{1,5}           - - - . . .
{1,2,5}         - . . . . .
{1,3,5}         - - . . . .
{1,4,5}         - - - . . .
{1,2,3,5}       - . + + . +
{1,2,4,5}       - . + + . +
{1,3,4,5}       - - . . . .
{1,2,3,4,5}     + + . . . +
{1,6}           - - - . . .
{1,2,6}         - . . . . .
{1,3,6}         - - + + . +
{1,4,6}         - - + + . +
{1,5,6}         - - - . . .
{1,2,3,6}       - + + + + +
{1,2,4,6}       - . + + . +
{1,2,5,6}       - . . . . .
{1,3,4,6}       - - + + . +
{1,3,5,6}       - - . . . .
{1,4,5,6}       - - + + . +
{1,2,3,4,6}     + + + + + +
{1,2,3,5,6}     - . . . . .
{1,2,4,5,6}     - . + + . +
{1,3,4,5,6}     - - + + . +
{1,2,3,4,5,6}   + + + + + +
{1,3,5,7}       - - + + . +
"""

_SYMBOL = {"+": YES, "-": NO, ".": None}


def published_table() -> List[tuple]:
    """[(RangeSet, {column: "yes" | "no" | None})] in published row order."""
    rows = []
    for line in PUBLISHED.strip().splitlines():
        name, *marks = line.split()
        rows.append((RangeSet.parse(name), dict(zip(COLUMNS, (_SYMBOL[m] for m in marks)))))
    return rows


# Prefixes in front of c/2, c/4, ... (c = 1) that fill a single interval.
INTERVAL_CONSTRUCTIONS = (
    (),
    (Fraction(1, 3),),
    (Fraction(3, 4),),
    (Fraction(2, 3), Fraction(2, 3)),
    (Fraction(1, 2), Fraction(1, 2)),
    (Fraction(3, 4), Fraction(3, 4)),
)

# Prefixes in front of 3/4, 2/4, 3/16, ... with an upper bound on the count
# that is not computed here.
CANTORVAL_CONSTRUCTIONS = (
    ((), 2, "the bare Cantorval has range {1,2} (cited)"),
    ((Fraction(3, 4),), 4, "count is f(x) + f(x - 3/4) <= 2 + 2 (cited bound on f)"),
    ((Fraction(11, 12), Fraction(11, 12)), 6, "count is at most 6 (cited)"),
)


@dataclass
class Cell:
    verdict: str                    # yes / no / undecided
    basis: str = ""
    published: Optional[str] = None
    outcome: str = ""               # agree / new / undecided / open / contradiction
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "basis": self.basis,
               "published": self.published or "blank", "outcome": self.outcome}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class TableRow:
    range: RangeSet
    cells: Dict[str, Cell]

    def to_json(self) -> dict:
        return {"range": str(self.range), "cells": {c: self.cells[c].to_json() for c in COLUMNS}}


@dataclass
class TableReport:
    bounds: SearchBounds
    rows: List[TableRow]

    def outcomes(self) -> Dict[str, int]:
        tally = {}
        for row in self.rows:
            for cell in row.cells.values():
                tally[cell.outcome] = tally.get(cell.outcome, 0) + 1
        return dict(sorted(tally.items()))

    def contradictions(self) -> list:
        return [(str(r.range), c) for r in self.rows for c in COLUMNS
                if r.cells[c].outcome == "contradiction"]

    def row(self, rng) -> TableRow:
        if isinstance(rng, str):
            rng = RangeSet.parse(rng)
        for r in self.rows:
            if r.range == rng:
                return r
        raise KeyError(str(rng))

    def to_json(self) -> dict:
        return {"bounds": self.bounds.to_json(), "outcomes": self.outcomes(),
                "contradictions": [f"{r} {c}" for r, c in self.contradictions()],
                "rows": [r.to_json() for r in self.rows]}

    def to_text(self) -> str:
        mark = {YES: "+", NO: "-", UNDECIDED: "?"}
        flag = {"agree": " ", "new": "*", "undecided": "~", "open": " ", "contradiction": "!"}
        width = max(len(str(r.range)) for r in self.rows)
        lines = ["range".ljust(width) + "  " + "  ".join(c.ljust(4) for c in COLUMNS)]
        for r in self.rows:
            cells = []
            for c in COLUMNS:
                cell = r.cells[c]
                pub = {YES: "+", NO: "-", None: "."}[cell.published]
                cells.append((mark[cell.verdict] + pub + flag[cell.outcome]).ljust(4))
            lines.append(str(r.range).ljust(width) + "  " + "  ".join(cells))
        lines.append("")
        lines.append("each cell: computed verdict, published verdict, marker")
        lines.append("  + yes  - no  ? undecided  . blank;  * new  ~ undecided here  ! contradiction")
        lines.append("outcomes: " + ", ".join(f"{k} {v}" for k, v in self.outcomes().items()))
        return "\n".join(lines)


def _outcome(verdict: str, published: Optional[str]) -> str:
    if verdict == UNDECIDED:
        return "open" if published is None else "undecided"
    if published is None:
        return "new"
    return "agree" if verdict == published else "contradiction"


# -- per-column deciders ----------------------------------------------------------

def _interval_ranges() -> Dict[RangeSet, tuple]:
    out = {}
    for prefix in INTERVAL_CONSTRUCTIONS:
        rng = range_exact(SequenceSpec.geometric(prefix))
        out.setdefault(rng, prefix)
    return out


def _single_interval(m: RangeSet, built: dict) -> Cell:
    if m in built:
        prefix = built[m]
        return Cell(YES, "prefix [" + ", ".join(format_rational(p) for p in prefix)
                    + "] before c/2^n, range computed exactly")
    if 2 not in m.finites:
        return Cell(NO, "bounded single-interval ranges contain 2")
    for c in range_level_constraints():
        if not c.holds(m):
            return Cell(NO, c.anchor)
    return Cell(UNDECIDED, "no construction and no excluding rule")


def _union(m: RangeSet, single: Cell, products: dict) -> Cell:
    if single.verdict == YES:
        return Cell(YES, "a single interval is a finite union")
    if m in products:
        head, prefix = products[m]
        return Cell(YES, f"witness {list(head)} scaled in front of prefix "
                    f"[{', '.join(format_rational(p) for p in prefix)}], range computed exactly")
    if 2 not in m.finites:
        return Cell(NO, "bounded ranges over finite unions of intervals contain 2 (cited)")
    return Cell(UNDECIDED, "no construction found")


def _product_constructions(found: SearchResult, built: dict) -> dict:
    """Ranges F * J realised by scaling a finite witness in front of an interval spec."""
    out = {}
    for (frng, wit), (jrng, prefix) in product(found.sorted_items(), built.items()):
        if frng.max() * jrng.max() > 6 or frng.finites == {1}:
            continue
        target = frng * jrng
        if target in out or target in built:
            continue
        spec = scale_concat(wit.sequence, SequenceSpec.geometric(prefix))
        if range_exact(spec) == target:
            out[target] = (wit.sequence, prefix)
    return out


def _finite(m: RangeSet, found: SearchResult) -> Cell:
    w = found.get(m)
    if w is not None:
        return Cell(YES, f"witness {list(w.sequence)}", detail={"witness": list(w.sequence)})
    if binomial_exclusion(m):
        return Cell(NO, "central binomial certificate")
    return Cell(UNDECIDED, "no witness within bounds and no certificate")


def _cantor(m: RangeSet, fin: Cell) -> Cell:
    if fin.verdict == YES:
        return Cell(YES, "finite ranges are Cantor-set ranges (cited)")
    return Cell(UNDECIDED, "no construction")


_PROBES = None


def _gn_probes() -> list:
    """Points of the bare Cantorval, small digit strings first."""
    global _PROBES
    if _PROBES is None:
        pts = {}
        for length in range(4):
            for pre in product((0, 2, 3, 5), repeat=length):
                for per in ((), (2,), (3,), (5,)):
                    v = DigitString(pre, per).value()
                    pts.setdefault(v, (length, len(per)))
        _PROBES = sorted(pts, key=lambda v: (pts[v], v))
    return _PROBES


def cantorval_points(prefix, wanted: set, scale=1) -> Dict[int, Fraction]:
    """Points where the count for prefix + Cantorval takes each wanted value."""
    spec = SequenceSpec.gn(prefix, scale)
    from .tail import shift_multiset

    shifts = [s for s, _ in shift_multiset(spec.prefix)]
    hits = {}
    for p in _gn_probes():
        for s in shifts:
            x = s + p * spec.tail.scale
            v = gn_prefix_count(spec, x)
            if v.is_finite and v.n in wanted and v.n not in hits:
                hits[v.n] = x
        if wanted <= set(hits):
            break
    return hits


def _cantorval_constructions(found: SearchResult) -> dict:
    out = {}
    base = RangeSet.of(1, 2)
    for prefix, bound, why in CANTORVAL_CONSTRUCTIONS:
        cands = {RangeSet(frozenset(range(1, bound + 1))), base}
        for rng in sorted(cands, key=lambda r: r.max()):
            if rng.max() != bound:
                continue
            out.setdefault(rng, (prefix, why))
    gn_total = SequenceSpec.gn().total_sum
    for frng, wit in found.sorted_items():
        target = frng * base
        if frng.finites == {1} or target.max() > 6 or target in out:
            continue
        spec = scale_concat(wit.sequence, SequenceSpec.gn())
        assert spec.total_sum > gn_total
        out[target] = (spec.prefix, f"witness {list(wit.sequence)} scaled in front; "
                       f"range is the product of the two ranges (cited)")
    return out


def _cantorval(m: RangeSet, constructions: dict) -> Cell:
    if m.finites == {1}:
        return Cell(NO, "unique representations force a Cantor set (cited)")
    if m in constructions:
        prefix, why = constructions[m]
        pts = cantorval_points(prefix, set(m.finites))
        if set(pts) == set(m.finites):
            return Cell(YES, why + "; each value attained at a computed point",
                        detail={"prefix": [format_rational(p) for p in prefix],
                                "points": {str(v): format_rational(x) for v, x in sorted(pts.items())}})
    return Cell(UNDECIDED, "no construction")


def _any(cells: Dict[str, Cell]) -> Cell:
    for c in ("I1", "I", "F", "C", "Cv"):
        if cells[c].verdict == YES:
            return Cell(YES, f"via {c}")
    return Cell(UNDECIDED, "no column decided")


def table_report(bounds: SearchBounds = SearchBounds(8, 12, 40), workers: int = 1,
                 found: Optional[SearchResult] = None) -> TableReport:
    if found is None:
        found = search_ranges(bounds, workers=workers)
    built = _interval_ranges()
    products = _product_constructions(found, built)
    cv = _cantorval_constructions(found)
    rows = []
    for m, published in published_table():
        cells = {}
        cells["I1"] = _single_interval(m, built)
        cells["I"] = _union(m, cells["I1"], products)
        cells["F"] = _finite(m, found)
        cells["C"] = _cantor(m, cells["F"])
        cells["Cv"] = _cantorval(m, cv)
        cells["R"] = _any(cells)
        for col, cell in cells.items():
            cell.published = published[col]
            cell.outcome = _outcome(cell.verdict, cell.published)
        rows.append(TableRow(m, cells))
    return TableReport(bounds, rows)
