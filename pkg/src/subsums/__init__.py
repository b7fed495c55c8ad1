"""Exact achievement sets and cardinal functions of summable series."""

__version__ = "0.1.0"

from .errors import InvalidArgument, ResourceLimitError, Unsupported
from .arith import (
    CONTINUUM,
    OMEGA,
    CardinalValue,
    RangeSet,
    finite,
    format_rational,
    is_dyadic,
    is_prime_set,
    parse_rational,
    product_range,
)
from .enumeration import profile, range_of
from .sequences import GN, Geometric, SequenceSpec, truncate
from .tail import point_count, range_exact

__all__ = [
    "__version__",
    "InvalidArgument",
    "ResourceLimitError",
    "Unsupported",
    "CONTINUUM",
    "OMEGA",
    "CardinalValue",
    "RangeSet",
    "finite",
    "format_rational",
    "is_dyadic",
    "is_prime_set",
    "parse_rational",
    "product_range",
    "profile",
    "range_of",
    "GN",
    "Geometric",
    "SequenceSpec",
    "truncate",
    "point_count",
    "range_exact",
]
