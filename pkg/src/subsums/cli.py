"""Command-line entry point.

Exit status: 0 success, 1 a negative ``cis`` answer, 2 invalid input or
usage, 3 a resource limit was hit.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .arith import format_rational, parse_rational
from .config import load_limits, thread_cap
from .errors import InvalidArgument, ResourceLimitError, Unsupported
from .sequences import SequenceSpec

EXIT_OK, EXIT_FALSE, EXIT_INVALID, EXIT_LIMIT = 0, 1, 2, 3


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidArgument(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"{path} is not valid JSON: {exc}")


def _load_spec(path) -> SequenceSpec:
    return SequenceSpec.from_json(_read_json(path))


def _digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _workers(requested):
    cap = thread_cap()
    return cap if requested is None else max(1, min(requested, cap))


# -- subcommands: each returns (payload, exit status) --------------------------------

def cmd_range(args, limits):
    from .tail import range_exact, range_witnesses

    spec = _load_spec(args.spec)
    out = {"input_digest": spec.digest(), "range": range_exact(spec, limits.max_prefix_length).to_json()}
    if args.witnesses:
        out["witnesses"] = {str(v): format_rational(x)
                            for v, x in range_witnesses(spec, limits.max_prefix_length).items()}
    return out, EXIT_OK


def cmd_point(args, limits):
    from .tail import point_count

    spec = _load_spec(args.spec)
    x = parse_rational(args.x)
    if spec.tail_kind == "gn":
        from .gn import gn_prefix_count

        count = gn_prefix_count(spec, x, limits.max_prefix_length, limits.automaton_state_ceiling)
    elif spec.tail is None:
        from .enumeration import profile

        count_n = profile(spec.prefix, limits.max_finite_length).get(x, 0)
        return {"input_digest": spec.digest(), "x": format_rational(x), "count": count_n}, EXIT_OK
    else:
        count = point_count(spec, x, limits.max_prefix_length)
    return {"input_digest": spec.digest(), "x": format_rational(x), "count": count.to_json()}, EXIT_OK


def cmd_kakeya(args, limits):
    from .kakeya import analyze, implied_constraints

    spec = _load_spec(args.spec)
    out = {"input_digest": spec.digest()}
    out.update(analyze(spec).to_json())
    if spec.tail_kind == "geometric":
        out["constraints"] = [c.to_json() for c in implied_constraints(spec)]
    else:
        out["constraints"] = []
    return out, EXIT_OK


def cmd_cis(args, limits):
    from .combinators import cis_detail

    spec = _load_spec(args.spec)
    y = parse_rational(args.y)
    if y <= 0:
        raise InvalidArgument("y must be positive")
    detail = cis_detail(spec, y, limits.max_prefix_length)
    out = {"input_digest": spec.digest(), "y": format_rational(y)}
    out.update(detail)
    return out, EXIT_OK if detail["contains"] else EXIT_FALSE


def _bounds(args):
    from .fsearch import SearchBounds

    length, term, total = args.max_len, args.max_term, args.max_sum
    if getattr(args, "bounds", None):
        parts = args.bounds.split(",")
        if len(parts) != 3:
            raise InvalidArgument("--bounds takes LEN,TERM,SUM (use '-' for unbounded)")
        length, term, total = (None if p.strip() in ("-", "") else int(p) for p in parts)
    return SearchBounds(length, term, total)


def cmd_search(args, limits):
    from .fsearch import search_ranges

    bounds = _bounds(args)
    result = search_ranges(bounds, workers=_workers(args.workers),
                           max_candidates=limits.max_search_candidates)
    out = {"input_digest": _digest(bounds.to_json())}
    out.update(result.to_json())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(out["ranges"], fh, indent=2)
            fh.write("\n")
    return out, EXIT_OK


def cmd_gn(args, limits):
    from .gn import DigitString, format_paths, gn_count, gn_paths, gn_prefix_count, pattern_check

    ceiling = limits.automaton_state_ceiling
    if args.gn_command == "count":
        x = parse_rational(args.x)
        count = gn_count(x, ceiling=ceiling)
        out = {"input_digest": _digest({"x": format_rational(x)}), "x": format_rational(x),
               "count": count.to_json()}
        if count.is_finite:
            out["representations"] = format_paths(gn_paths(x, ceiling=ceiling))
        return out, EXIT_OK
    if args.gn_command == "pattern":
        a, b = DigitString.parse(args.a), DigitString.parse(args.b)
        out = {"input_digest": _digest({"a": str(a), "b": str(b)}), "a": str(a), "b": str(b),
               "a_value": format_rational(a.value()), "b_value": format_rational(b.value())}
        out.update(pattern_check(a, b).to_json())
        return out, EXIT_OK
    spec = _load_spec(args.spec)
    x = parse_rational(args.x)
    count = gn_prefix_count(spec, x, limits.max_prefix_length, ceiling)
    return {"input_digest": spec.digest(), "x": format_rational(x), "count": count.to_json()}, EXIT_OK


def cmd_rationalize(args, limits):
    from .enumeration import range_of
    from .rationalizer import SymbolicSequence, base_for, rationalize, symbolic_range

    seq = SymbolicSequence.from_json(_read_json(args.spec))
    ints = rationalize(seq)
    return {"input_digest": seq.digest(), "K": base_for(seq), "sequence": list(ints),
            "range": range_of(ints, limits.max_finite_length).to_json(),
            "symbolic_range": symbolic_range(seq, limits.max_finite_length).to_json()}, EXIT_OK


def cmd_table(args, limits):
    from .fsearch import search_ranges
    from .table import table_report

    bounds = _bounds(args)
    found = search_ranges(bounds, workers=_workers(args.workers),
                          max_candidates=limits.max_search_candidates)
    report = table_report(bounds, found=found)
    out = {"input_digest": _digest(bounds.to_json())}
    out.update(report.to_json())
    out["_text"] = report.to_text()
    return out, EXIT_OK


# -- output --------------------------------------------------------------------------

def _text(payload, indent=0) -> str:
    if "_text" in payload:
        return payload["_text"]
    lines = []
    keys = [k for k in payload if not k.startswith("_")]
    width = max((len(k) for k in keys), default=0)
    pad = " " * indent
    for k in keys:
        v = payload[k]
        if isinstance(v, dict) and v and all(not isinstance(x, (dict, list)) for x in v.values()):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 2))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(pad + "  - " + ", ".join(f"{a}={b}" for a, b in item.items()))
        else:
            shown = json.dumps(v, ensure_ascii=False) if isinstance(v, (dict, list)) else v
            lines.append(f"{pad}{k.ljust(width)}  {shown}")
    return "\n".join(lines)


def _emit(payload, fmt):
    if fmt == "text":
        print(_text(payload))
    else:
        clean = {"version": __version__}
        clean.update({k: v for k, v in payload.items() if not k.startswith("_")})
        print(json.dumps(clean, indent=2, ensure_ascii=False))


def _global_options(p, defaults=True):
    keep = {} if defaults else {"default": argparse.SUPPRESS}
    p.add_argument("--format", choices=("json", "text"), **(keep or {"default": "json"}))
    p.add_argument("--config", help="TOML file with a [limits] table", **keep)
    p.add_argument("--max-prefix", type=int, help="override the prefix length limit", **keep)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="subsums", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_options(p)
    # the same options are accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, defaults=False)
    sub = p.add_subparsers(dest="command", required=True)
    real_add = sub.add_parser

    def add_parser(name, **kw):
        return real_add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("range", help="exact range for a prefix + c/2^n spec")
    s.add_argument("--spec", required=True, help="sequence spec JSON file ('-' for stdin)")
    s.add_argument("--witnesses", action="store_true", help="add one point per value")
    s.set_defaults(func=cmd_range)

    s = sub.add_parser("point", help="representation count at one point")
    s.add_argument("--spec", required=True)
    s.add_argument("--x", required=True)
    s.set_defaults(func=cmd_point)

    s = sub.add_parser("kakeya", help="tail sums, strict set, classification, constraints")
    s.add_argument("--spec", required=True)
    s.set_defaults(func=cmd_kakeya)

    s = sub.add_parser("cis", help="does adjoining y keep the range? (exit 0 yes, 1 no)")
    s.add_argument("--spec", required=True)
    s.add_argument("--y", required=True)
    s.set_defaults(func=cmd_cis)

    for name, func, helptext in (("search-f", cmd_search, "bounded search for finite witnesses"),
                                 ("table", cmd_table, "decide the summary table of small ranges")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--max-len", type=int, default=8)
        s.add_argument("--max-term", type=int, default=12)
        s.add_argument("--max-sum", type=int, default=40)
        s.add_argument("--bounds", help="LEN,TERM,SUM shorthand; '-' leaves one unbounded")
        s.add_argument("--workers", type=int, help="process count (capped by SUBSUM_THREADS)")
        if name == "search-f":
            s.add_argument("--out", help="write {range: witness} JSON here")
        s.set_defaults(func=func)

    s = sub.add_parser("gn", help="counts in the 3/4, 2/4, 3/16, ... Cantorval")
    gsub = s.add_subparsers(dest="gn_command", required=True)
    real_gadd = gsub.add_parser
    gsub.add_parser = lambda name, **kw: real_gadd(name, parents=[common], **kw)
    g = gsub.add_parser("count")
    g.add_argument("--x", required=True)
    g = gsub.add_parser("pattern")
    g.add_argument("--a", required=True, help="digits like '2:(5)'")
    g.add_argument("--b", required=True)
    g = gsub.add_parser("prefix")
    g.add_argument("--spec", required=True)
    g.add_argument("--x", required=True)
    s.set_defaults(func=cmd_gn)

    s = sub.add_parser("rationalize", help="integer sequence for a symbolic one")
    s.add_argument("--spec", required=True)
    s.set_defaults(func=cmd_rationalize)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        limits = load_limits(args.config, max_prefix_length=args.max_prefix)
        payload, status = args.func(args, limits)
    except ResourceLimitError as exc:
        msg = {"error": "resource-limit", "message": str(exc)}
        if exc.estimate is not None:
            msg["estimate"] = exc.estimate
        print(json.dumps(msg), file=sys.stderr)
        return EXIT_LIMIT
    except (InvalidArgument, Unsupported) as exc:
        kind = "unsupported" if isinstance(exc, Unsupported) else "invalid-argument"
        print(json.dumps({"error": kind, "message": str(exc)}), file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(json.dumps({"error": "io", "message": str(exc)}), file=sys.stderr)
        return EXIT_INVALID
    _emit(payload, args.format)
    return status


if __name__ == "__main__":
    sys.exit(main())
