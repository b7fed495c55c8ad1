"""Representation counting in the Cantorval of 3/4, 2/4, 3/16, 2/16, ...

Subsums of that sequence are the base-4 expansions sum a_n 4^-n with digits
in {0, 2, 3, 5}; each digit is 3e + 2e' in exactly one way, so counting
representations of x is counting digit strings.  Reading one digit maps the
normalised remainder rho to 4*rho - d, which must stay in [0, 5/3].  For
rational x only finitely many remainders occur, so the digit strings are the
infinite paths of a finite graph.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, List, Optional

import networkx as nx

from .arith import CONTINUUM, OMEGA, CardinalValue, finite, format_rational, parse_rational
from .config import DEFAULT_LIMITS
from .errors import InvalidArgument, ResourceLimitError, Unsupported
from .sequences import GN, SequenceSpec
from .tail import shift_multiset

GN_DIGIT_SET = (0, 2, 3, 5)
GN_BASE = 4


# -- digit strings ------------------------------------------------------------

@dataclass(frozen=True)
class DigitString:
    """Eventually periodic digit string; an empty period means zeros forever."""

    preperiod: tuple = ()
    period: tuple = ()
    base: int = GN_BASE
    digits: tuple = field(default=GN_DIGIT_SET, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(int(d) for d in self.preperiod))
        object.__setattr__(self, "period", tuple(int(d) for d in self.period))
        bad = [d for d in self.preperiod + self.period if d not in self.digits]
        if bad:
            raise InvalidArgument(f"digits {bad} not in {sorted(set(self.digits))}")

    @classmethod
    def parse(cls, text: str) -> "DigitString":
        """Read ``"2:(5)"``, ``"23"``, ``"(32)"`` or ``"0:()"``."""
        m = re.fullmatch(r"\s*([0-9]*)\s*:?\s*(?:\(([0-9]*)\))?\s*", text)
        if not m:
            raise InvalidArgument(f"digit string must look like '2:(5)', got {text!r}")
        return cls(tuple(m.group(1)), tuple(m.group(2) or ()))

    def value(self) -> Fraction:
        b = self.base
        pre = sum((Fraction(d, b ** (i + 1)) for i, d in enumerate(self.preperiod)), Fraction(0))
        if not self.period:
            return pre
        block = 0
        for d in self.period:
            block = block * b + d
        cyc = Fraction(block, b ** len(self.period) - 1)
        return pre + cyc / b ** len(self.preperiod)

    def digit(self, n: int) -> int:
        """1-based digit."""
        if n <= len(self.preperiod):
            return self.preperiod[n - 1]
        if not self.period:
            return 0
        return self.period[(n - len(self.preperiod) - 1) % len(self.period)]

    def __str__(self):
        return "".join(map(str, self.preperiod)) + ":(" + "".join(map(str, self.period)) + ")"


# -- generic infinite-path census --------------------------------------------

def count_infinite_paths(edges: Dict, start) -> CardinalValue:
    """Number of infinite walks from *start* in a finite graph.

    *edges* maps each node to a list of (label, target); parallel edges are
    separate walks.  Every node must have at least one out-edge (a pruned
    graph).  The answer is continuum when a reachable strongly connected
    component holds more than one cycle, omega when a reachable single-cycle
    component can be left, and otherwise the number of routes into the
    terminal cycles.
    """
    g = _reachable_digraph(edges, start)
    comp_of = {}
    comps = list(nx.strongly_connected_components(g))
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i

    cyclic = set()
    leaky = False
    for i, comp in enumerate(comps):
        inside = [(v, sum(1 for _, t in edges[v] if comp_of[t] == i)) for v in comp]
        if all(k == 0 for _, k in inside):
            continue
        if any(k > 1 for _, k in inside):
            return CONTINUUM
        cyclic.add(i)
        if any(comp_of[t] != i for v in comp for _, t in edges[v]):
            leaky = True
    if leaky:
        return OMEGA

    memo = {}
    for v in reversed(list(nx.topological_sort(nx.condensation(g, comps)))):
        for node in comps[v]:
            if v in cyclic:
                memo[node] = 1
            else:
                memo[node] = sum(memo[t] for _, t in edges[node])
    return finite(memo[start])


def _reachable_digraph(edges, start) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_node(start)
    stack = [start]
    seen = {start}
    while stack:
        v = stack.pop()
        for _, t in edges[v]:
            g.add_edge(v, t)
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return g


# -- the remainder automaton ---------------------------------------------------

@dataclass
class RemainderAutomaton:
    start: Fraction
    edges: Dict[Fraction, List[tuple]]      # state -> [(digit, next state)]
    digits: tuple
    base: int
    bound: Fraction

    @classmethod
    def build(cls, x, digits=GN_DIGIT_SET, base=GN_BASE,
              ceiling: int = DEFAULT_LIMITS.automaton_state_ceiling) -> Optional["RemainderAutomaton"]:
        """Pruned automaton from x, or None when x has no representation."""
        x = parse_rational(x)
        bound = Fraction(max(digits), base - 1)
        if not 0 <= x <= bound:
            return None
        edges = {}
        queue = deque([x])
        while queue:
            rho = queue.popleft()
            if rho in edges:
                continue
            if len(edges) >= ceiling:
                raise ResourceLimitError(f"automaton exceeds {ceiling} states", estimate=None)
            out = []
            for d in digits:
                nxt = base * rho - d
                if 0 <= nxt <= bound:
                    out.append((d, nxt))
                    if nxt not in edges:
                        queue.append(nxt)
            edges[rho] = out
        _prune(edges)
        if x not in edges:
            return None
        return cls(x, edges, tuple(digits), base, bound)

    def count(self) -> CardinalValue:
        return count_infinite_paths(self.edges, self.start)

    def paths(self, limit: int = 1000) -> list:
        """Every digit string from the start, for a finite count."""
        if not self.count().is_finite:
            raise Unsupported("infinitely many representations")
        out = []

        def cycle_from(v):
            digits, cur = [], v
            while True:
                d, cur = self._stay_edge(cur)
                digits.append(d)
                if cur == v:
                    return digits

        cyc_nodes = self._cycle_nodes()

        def walk(v, pre):
            if len(out) > limit:
                raise ResourceLimitError(f"more than {limit} representations", estimate=None)
            if v in cyc_nodes:
                period = cycle_from(v)
                if set(period) == {0}:
                    period = []
                out.append(DigitString(tuple(pre), tuple(period), self.base, self.digits))
                return
            for d, t in self.edges[v]:
                walk(t, pre + [d])

        walk(self.start, [])
        return out

    def _cycle_nodes(self) -> set:
        g = _reachable_digraph(self.edges, self.start)
        nodes = set()
        for comp in nx.strongly_connected_components(g):
            v = next(iter(comp))
            if len(comp) > 1 or g.has_edge(v, v):
                nodes |= comp
        self._cycles = nodes
        return nodes

    def _stay_edge(self, v):
        for d, t in self.edges[v]:
            if t in self._cycles:
                return d, t
        raise AssertionError("cycle node without a cycle edge")


def _prune(edges: dict) -> None:
    """Drop states from which every digit eventually leaves the interval."""
    preds = {v: [] for v in edges}
    for v, out in edges.items():
        for _, t in out:
            preds[t].append(v)
    live_out = {v: len(out) for v, out in edges.items()}
    dead = deque(v for v, k in live_out.items() if k == 0)
    gone = set()
    while dead:
        v = dead.popleft()
        if v in gone:
            continue
        gone.add(v)
        for p in preds[v]:
            live_out[p] -= 1
            if live_out[p] == 0:
                dead.append(p)
    for v in gone:
        del edges[v]
    for v in edges:
        edges[v] = [(d, t) for d, t in edges[v] if t not in gone]


def gn_count(x, scale=1, ceiling: int = DEFAULT_LIMITS.automaton_state_ceiling) -> CardinalValue:
    """Representations of x by scale * (3/4, 2/4, 3/16, 2/16, ...)."""
    return _normalised_count(parse_rational(x) / parse_rational(scale), ceiling)


@lru_cache(maxsize=65536)
def _normalised_count(x: Fraction, ceiling: int) -> CardinalValue:
    auto = RemainderAutomaton.build(x, ceiling=ceiling)
    return finite(0) if auto is None else auto.count()


def gn_paths(x, scale=1, ceiling: int = DEFAULT_LIMITS.automaton_state_ceiling) -> list:
    x = parse_rational(x) / parse_rational(scale)
    auto = RemainderAutomaton.build(x, ceiling=ceiling)
    return [] if auto is None else auto.paths()


def gn_prefix_count(spec: SequenceSpec, x, limit: int = DEFAULT_LIMITS.max_prefix_length,
                    ceiling: int = DEFAULT_LIMITS.automaton_state_ceiling) -> CardinalValue:
    """Count for a finite prefix in front of the scaled Cantorval sequence."""
    if not isinstance(spec.tail, GN):
        raise Unsupported(f"needs a gn tail, got {spec.tail_kind!r}")
    if len(spec.prefix) > limit:
        raise ResourceLimitError(f"prefix of length {len(spec.prefix)} exceeds limit {limit}",
                                 estimate=2 ** len(spec.prefix))
    x = parse_rational(x)
    total = finite(0)
    for sigma, mult in shift_multiset(spec.prefix):
        if sigma > x:
            break
        total = total + gn_count(x - sigma, spec.tail.scale, ceiling) * mult
    return total


# -- double-representation pattern ---------------------------------------------

_PRE, _EVEN, _ODD, _DEAD = "pre", "even", "odd", "dead"


def _step(state, a, b):
    """One digit pair; returns (new state, whether an n_k index was placed)."""
    if state == _PRE:
        if a == b:
            return _PRE, False
        return (_EVEN, True) if (a, b) == (2, 3) else (_DEAD, False)
    if state == _EVEN:
        if (a, b) in ((3, 0), (5, 2)):
            return _EVEN, False
        return (_ODD, True) if (a, b) == (5, 0) else (_DEAD, False)
    if state == _ODD:
        if (a, b) in ((0, 3), (2, 5)):
            return _ODD, False
        return (_EVEN, True) if (a, b) == (0, 5) else (_DEAD, False)
    return _DEAD, False


@dataclass(frozen=True)
class PatternVerdict:
    equal_values: bool
    matches_pattern: bool
    swapped: bool = False               # matched with the roles of a and b exchanged
    n_sequence: tuple = ()              # indices n_0 < n_1 < ... up to where the run repeats
    n_sequence_continues: bool = False  # the periodic part keeps producing indices

    def to_json(self) -> dict:
        return {"equal_values": self.equal_values, "matches_pattern": self.matches_pattern,
                "swapped": self.swapped, "n_sequence": list(self.n_sequence),
                "n_sequence_continues": self.n_sequence_continues}


def _run_pattern(a: DigitString, b: DigitString):
    pre = max(len(a.preperiod), len(b.preperiod))
    per = lcm(len(a.period) or 1, len(b.period) or 1)
    state, marks, n = _PRE, [], 0
    for n in range(1, pre + 1):
        state, mark = _step(state, a.digit(n), b.digit(n))
        if mark:
            marks.append(n)
        if state == _DEAD:
            return False, (), False
    seen = {}
    while state not in seen:
        seen[state] = len(marks)
        for _ in range(per):
            n += 1
            state, mark = _step(state, a.digit(n), b.digit(n))
            if mark:
                marks.append(n)
            if state == _DEAD:
                return False, (), False
    # from the boundary where state first appeared, the run repeats forever
    continues = len(marks) > seen[state]
    return state != _PRE, tuple(marks), continues


def pattern_check(a: DigitString, b: DigitString) -> PatternVerdict:
    """Do a and b form the known two-representation pattern (in either order)?"""
    equal = a.value() == b.value()
    ok, marks, cont = _run_pattern(a, b)
    if ok:
        return PatternVerdict(equal, True, False, marks, cont)
    ok, marks, cont = _run_pattern(b, a)
    if ok:
        return PatternVerdict(equal, True, True, marks, cont)
    return PatternVerdict(equal, False)


def format_paths(paths) -> list:
    return [{"digits": str(p), "value": format_rational(p.value())} for p in paths]
