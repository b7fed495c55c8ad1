"""Resource limits, optionally loaded from a TOML file."""
from __future__ import annotations

import os
import sys
from dataclasses import dataclass, fields, replace

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import InvalidArgument


@dataclass(frozen=True)
class Limits:
    max_finite_length: int = 30
    max_prefix_length: int = 20
    max_search_candidates: int = 5_000_000
    automaton_state_ceiling: int = 200_000
    max_prime_set_size: int = 24


DEFAULT_LIMITS = Limits()


def load_limits(path=None, **overrides) -> Limits:
    """Read a ``[limits]`` table (or top-level keys) from *path*.

    Keyword overrides that are not None win over the file.
    """
    limits = DEFAULT_LIMITS
    if path is not None:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
        table = data.get("limits", data)
        known = {f.name for f in fields(Limits)}
        unknown = set(table) - known
        if unknown:
            raise InvalidArgument(f"unknown limit keys: {sorted(unknown)}")
        limits = replace(limits, **{k: int(v) for k, v in table.items()})
    limits = replace(limits, **{k: int(v) for k, v in overrides.items() if v is not None})
    for f in fields(Limits):
        if getattr(limits, f.name) < 1:
            raise InvalidArgument(f"{f.name} must be positive")
    return limits


def thread_cap() -> int:
    """Worker count allowed by ``SUBSUM_THREADS`` (defaults to the CPU count)."""
    raw = os.environ.get("SUBSUM_THREADS")
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise InvalidArgument(f"SUBSUM_THREADS must be an integer, got {raw!r}")
        return max(1, n)
    return os.cpu_count() or 1
