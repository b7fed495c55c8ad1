"""Exact scalars, multiplicities and range sets.

Every real number in the package is a :class:`fractions.Fraction`; floats are
rejected at the boundary.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import combinations
from typing import Iterable

from .errors import InvalidArgument, ResourceLimitError, Unsupported

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(value) -> Fraction:
    """Read ``"p/q"``, ``"p"``, an int or a Fraction. Floats are refused."""
    if isinstance(value, bool):
        raise InvalidArgument(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m:
            num, den = m.group(1), m.group(2)
            if den is not None and int(den) == 0:
                raise InvalidArgument(f"zero denominator in {value!r}")
            return Fraction(int(num), int(den) if den else 1)
    raise InvalidArgument(f"not a rational: {value!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def is_dyadic(x, scale=1) -> bool:
    """True iff ``x/scale`` has a power-of-two denominator in lowest terms."""
    x = parse_rational(x)
    scale = parse_rational(scale)
    if scale <= 0:
        raise InvalidArgument("scale must be positive")
    return is_power_of_two((x / scale).denominator)


# -- multiplicities ---------------------------------------------------------

_FINITE, _OMEGA, _CONTINUUM = 0, 1, 2


@total_ordering
@dataclass(frozen=True)
class CardinalValue:
    """A number of representations: a nonnegative integer, omega or continuum."""

    kind: int
    n: int = 0

    def __post_init__(self):
        if self.kind == _FINITE and self.n < 0:
            raise InvalidArgument("negative multiplicity")

    @property
    def is_finite(self) -> bool:
        return self.kind == _FINITE

    def __lt__(self, other):
        if not isinstance(other, CardinalValue):
            return NotImplemented
        return (self.kind, self.n) < (other.kind, other.n)

    def __add__(self, other):
        if isinstance(other, int):
            other = finite(other)
        if self.kind == other.kind == _FINITE:
            return finite(self.n + other.n)
        # finite summands never lower an infinite one
        return max(self, other)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, int):
            other = finite(other)
        if self.kind == other.kind == _FINITE:
            return finite(self.n * other.n)
        if (self.kind == _FINITE and self.n == 0) or (other.kind == _FINITE and other.n == 0):
            return finite(0)
        return max(self, other)

    __rmul__ = __mul__

    def __str__(self):
        if self.kind == _FINITE:
            return str(self.n)
        return "ω" if self.kind == _OMEGA else "𝔠"

    def to_json(self):
        if self.kind == _FINITE:
            return self.n
        return "omega" if self.kind == _OMEGA else "continuum"


def finite(n: int) -> CardinalValue:
    return CardinalValue(_FINITE, int(n))


OMEGA = CardinalValue(_OMEGA)
CONTINUUM = CardinalValue(_CONTINUUM)


# -- range sets -------------------------------------------------------------

@dataclass(frozen=True)
class RangeSet:
    """The set of multiplicities a cardinal function attains.

    ``finites`` holds the positive integers; ``omega`` and ``continuum`` flag
    the two infinite values.
    """

    finites: frozenset = frozenset()
    omega: bool = False
    continuum: bool = False

    def __post_init__(self):
        object.__setattr__(self, "finites", frozenset(int(v) for v in self.finites))
        if any(v <= 0 for v in self.finites):
            raise InvalidArgument("range sets hold positive integers only")
        if not (self.finites or self.omega or self.continuum):
            raise InvalidArgument("a range set is never empty")

    @classmethod
    def of(cls, *values: int) -> "RangeSet":
        return cls(frozenset(values))

    @classmethod
    def from_values(cls, values: Iterable[CardinalValue]) -> "RangeSet":
        fin, om, co = set(), False, False
        for v in values:
            if v.kind == _FINITE:
                if v.n > 0:
                    fin.add(v.n)
            elif v.kind == _OMEGA:
                om = True
            else:
                co = True
        return cls(frozenset(fin), om, co)

    @classmethod
    def parse(cls, text: str) -> "RangeSet":
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise InvalidArgument(f"range set must look like '{{1,2,4}}', got {text!r}")
        fin, om, co = set(), False, False
        for tok in filter(None, (t.strip() for t in body[1:-1].split(","))):
            if tok in ("ω", "omega", "w"):
                om = True
            elif tok in ("𝔠", "c", "continuum"):
                co = True
            elif tok.isdigit():
                fin.add(int(tok))
            else:
                raise InvalidArgument(f"bad range-set element {tok!r}")
        return cls(frozenset(fin), om, co)

    @property
    def is_finite(self) -> bool:
        return not (self.omega or self.continuum)

    @property
    def bounded(self) -> bool:
        return self.is_finite

    def max(self) -> int:
        if not self.is_finite:
            raise Unsupported("range set with infinite members has no finite maximum")
        return max(self.finites)

    def sorted(self) -> list:
        return sorted(self.finites)

    def __contains__(self, item) -> bool:
        if isinstance(item, CardinalValue):
            if item.kind == _OMEGA:
                return self.omega
            if item.kind == _CONTINUUM:
                return self.continuum
            item = item.n
        return item in self.finites

    def __mul__(self, other: "RangeSet") -> "RangeSet":
        return product_range(self, other)

    def __str__(self):
        parts = [str(v) for v in sorted(self.finites)]
        if self.omega:
            parts.append("ω")
        if self.continuum:
            parts.append("𝔠")
        return "{" + ",".join(parts) + "}"

    def to_json(self) -> list:
        out = sorted(self.finites)
        if self.omega:
            out.append("omega")
        if self.continuum:
            out.append("continuum")
        return out


def product_range(m: RangeSet, l: RangeSet) -> RangeSet:
    """Elementwise product ``M·L`` with omega/continuum absorbing finite factors."""
    fin = frozenset(a * b for a in m.finites for b in l.finites)
    # every operand is nonempty, so an infinite member always meets a partner
    continuum = m.continuum or l.continuum
    omega = (m.omega and bool(l.finites or l.omega)) or (l.omega and bool(m.finites or m.omega))
    return RangeSet(fin, omega, continuum)


def is_prime_set(m: RangeSet, max_size: int = 24) -> bool:
    """True iff ``M = A·B`` forces ``A = {1}`` or ``B = {1}``.

    Both factors contain 1 and are therefore subsets of M. For a fixed A the
    largest admissible B is ``{b : A·b ⊆ M}``, and ``A·B = M`` for some B iff it
    holds for that largest one, so only the A side is enumerated.
    """
    if not m.is_finite:
        raise Unsupported("prime-set test needs a finite range set")
    if 1 not in m.finites:
        raise InvalidArgument("range sets always contain 1")
    elems = sorted(m.finites)
    if len(elems) > max_size:
        raise ResourceLimitError(f"{len(elems)} elements exceed prime-set limit {max_size}",
                                 estimate=2 ** (len(elems) - 1))
    target = m.finites
    rest = elems[1:]
    for r in range(1, len(rest) + 1):
        for extra in combinations(rest, r):
            a = (1,) + extra
            b = [y for y in elems if all(x * y in target for x in a)]
            if len(b) > 1 and {x * y for x in a for y in b} == target:
                return False
    return True
