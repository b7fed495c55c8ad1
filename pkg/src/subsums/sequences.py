"""Sequence descriptions: a finite prefix plus an optional analytic tail."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .arith import format_rational, parse_rational
from .errors import InvalidArgument

GN_DIGITS = (3, 2)
GN_RATIO = Fraction(1, 4)
GN_TOTAL = Fraction(5, 3)


@dataclass(frozen=True)
class Geometric:
    """The tail c/2, c/4, c/8, ... with sum c."""

    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", parse_rational(self.c))
        if self.c <= 0:
            raise InvalidArgument("geometric tail needs c > 0")

    @property
    def total(self) -> Fraction:
        return self.c

    def terms(self) -> Iterator[Fraction]:
        t = self.c
        while True:
            t /= 2
            yield t


@dataclass(frozen=True)
class GN:
    """scale times 3/4, 2/4, 3/16, 2/16, 3/64, ...; sum 5/3*scale."""

    scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "scale", parse_rational(self.scale))
        if self.scale <= 0:
            raise InvalidArgument("GN tail needs scale > 0")

    @property
    def total(self) -> Fraction:
        return GN_TOTAL * self.scale

    def terms(self) -> Iterator[Fraction]:
        q = self.scale
        while True:
            q *= GN_RATIO
            for a in GN_DIGITS:
                yield a * q


Tail = Union[None, Geometric, GN]


@dataclass(frozen=True)
class SequenceSpec:
    prefix: tuple = ()
    tail: Tail = None

    def __post_init__(self):
        prefix = tuple(parse_rational(p) for p in self.prefix)
        if any(p <= 0 for p in prefix):
            raise InvalidArgument("prefix terms must be positive")
        if self.tail is None and not prefix:
            raise InvalidArgument("a sequence without tail needs a nonempty prefix")
        if self.tail is not None and not isinstance(self.tail, (Geometric, GN)):
            raise InvalidArgument(f"unknown tail {self.tail!r}")
        object.__setattr__(self, "prefix", prefix)

    @classmethod
    def geometric(cls, prefix=(), c=1) -> "SequenceSpec":
        return cls(tuple(prefix), Geometric(c))

    @classmethod
    def gn(cls, prefix=(), scale=1) -> "SequenceSpec":
        return cls(tuple(prefix), GN(scale))

    @classmethod
    def finite(cls, terms) -> "SequenceSpec":
        return cls(tuple(terms), None)

    @property
    def tail_kind(self) -> str:
        if self.tail is None:
            return "none"
        return "geometric" if isinstance(self.tail, Geometric) else "gn"

    @property
    def tail_total(self) -> Fraction:
        return Fraction(0) if self.tail is None else self.tail.total

    @property
    def total_sum(self) -> Fraction:
        return sum(self.prefix, Fraction(0)) + self.tail_total

    def with_prefix(self, prefix) -> "SequenceSpec":
        return SequenceSpec(tuple(prefix), self.tail)

    def tail_terms(self) -> Iterator[Fraction]:
        return iter(()) if self.tail is None else self.tail.terms()

    def tagged_terms(self) -> Iterator[tuple]:
        """(term, from_prefix) pairs in nonincreasing order; prefix wins ties."""
        pre = sorted(self.prefix, reverse=True)
        tail = self.tail_terms()
        nxt = next(tail, None)
        i = 0
        while i < len(pre) or nxt is not None:
            if i < len(pre) and (nxt is None or pre[i] >= nxt):
                yield pre[i], True
                i += 1
            else:
                yield nxt, False
                nxt = next(tail, None)

    def canonical_terms(self) -> Iterator[Fraction]:
        return (t for t, _ in self.tagged_terms())

    def prefix_region(self) -> int:
        """1-based canonical index of the last prefix term (0 without a prefix)."""
        left = len(self.prefix)
        if not left:
            return 0
        for n, (_, from_prefix) in enumerate(self.tagged_terms(), 1):
            left -= from_prefix
            if not left:
                return n
        raise AssertionError("unreachable")

    # -- serialisation ------------------------------------------------------

    def to_json(self) -> dict:
        if self.tail is None:
            tail = {"kind": "none"}
        elif isinstance(self.tail, Geometric):
            tail = {"kind": "geometric", "c": format_rational(self.tail.c)}
        else:
            tail = {"kind": "gn", "scale": format_rational(self.tail.scale)}
        return {"prefix": [format_rational(p) for p in self.prefix], "tail": tail}

    @classmethod
    def from_json(cls, data) -> "SequenceSpec":
        if not isinstance(data, dict):
            raise InvalidArgument("sequence spec must be a JSON object")
        prefix = data.get("prefix", [])
        if not isinstance(prefix, list):
            raise InvalidArgument("'prefix' must be a list of rational strings")
        tail = data.get("tail", {"kind": "none"})
        if not isinstance(tail, dict) or "kind" not in tail:
            raise InvalidArgument("'tail' must be an object with a 'kind'")
        kind = tail["kind"]
        if kind == "none":
            t = None
        elif kind == "geometric":
            t = Geometric(parse_rational(tail.get("c", "1")))
        elif kind == "gn":
            t = GN(parse_rational(tail.get("scale", "1")))
        else:
            raise InvalidArgument(f"unknown tail kind {kind!r}")
        return cls(tuple(parse_rational(p) for p in prefix), t)

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def truncate(spec: SequenceSpec, depth: int) -> tuple:
    """Prefix followed by the first *depth* tail terms."""
    if depth < 1:
        raise InvalidArgument("depth must be at least 1")
    tail = spec.tail_terms()
    extra = []
    for _ in range(depth):
        t = next(tail, None)
        if t is None:
            break
        extra.append(t)
    return spec.prefix + tuple(extra)
