"""Command-line entry point: ``semispline <command> ...``.

Exit status is 0 on success, 1 when the input is well formed but outside
an operation's domain (one ``error: <reason>: <detail>`` line on stderr),
and 2 for usage or parse errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import bounds, bspline, semigroup, stats
from .errors import DomainError
from .partition import normalized_estimate, vpf
from .tpower import system, truncated_power
from .values import format_value, parse_value


class ParseError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False, default=_default) + "\n"


def _default(v):
    if isinstance(v, Fraction):
        return str(v)
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _value(text, allow_float, where):
    if isinstance(text, bool):
        raise ParseError(f"{where}: booleans are not numbers")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        if not allow_float:
            raise ParseError(f"{where}: float {text!r} needs --float")
        return text
    try:
        v = parse_value(str(text), allow_float=allow_float)
    except ValueError:
        hint = "" if allow_float else " (floats need --float)"
        raise ParseError(f"{where}: cannot parse {text!r}{hint}") from None
    if allow_float and isinstance(v, Fraction):
        return float(v)
    return v


def _values(text, allow_float, where):
    items = text if isinstance(text, list) else str(text).split(",")
    return [_value(t, allow_float, f"{where}[{i}]") for i, t in enumerate(items)]


def _ints(text, where):
    items = text if isinstance(text, list) else str(text).split(",")
    out = []
    for i, t in enumerate(items):
        try:
            out.append(int(str(t).strip()))
        except ValueError:
            raise ParseError(f"{where}[{i}]: {t!r} is not an integer") from None
    return out


def _endpoint(text, allow_float, where):
    if text is None:
        return None
    return _value(text, allow_float, where)


def _emit(out, fmt, data):
    if fmt == "csv":
        out.write(stats.to_csv(data))
    else:
        out.write(dumps(data.to_dict()))


def _write_csv(out, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    out.write(buf.getvalue())


# --- commands ---------------------------------------------------------------

def cmd_factorizations(args, out):
    gens = _ints(args.gens, "--gens")
    facs = semigroup.enumerate_factorizations(gens, args.n, limit=args.limit)
    if args.format == "csv":
        _write_csv(out, [f"x{i + 1}" for i in range(len(gens))], facs)
    else:
        out.write(dumps({"generators": gens, "n": args.n,
                         "factorizations": [list(f) for f in facs]}))


def cmd_count(args, out):
    gens = _ints(args.gens, "--gens")
    if args.weights is None:
        total = semigroup.count_factorizations(gens, args.n)
        result = {"generators": gens, "n": args.n, "count": total}
    else:
        w = _values(args.weights, args.float, "--weights")
        a = _endpoint(args.alpha, args.float, "--alpha")
        b = _endpoint(args.beta, args.float, "--beta")
        ms = semigroup.weighted_lengths(gens, w, args.n)
        lo = -math.inf if a is None else a
        hi = math.inf if b is None else b
        inside = sum(c for l, c in ms.items() if lo <= l <= hi)
        result = {"generators": gens, "weights": [format_value(v) for v in w], "n": args.n,
                  "count": ms.total, "in_interval": inside,
                  "alpha": format_value(lo) if math.isfinite(lo) else str(lo),
                  "beta": format_value(hi) if math.isfinite(hi) else str(hi)}
    if args.format == "csv":
        _write_csv(out, list(result), [[_cell(v) for v in result.values()]])
    else:
        out.write(dumps(result))


def _cell(v):
    if isinstance(v, list):
        return ",".join(str(x) for x in v)
    return v


def cmd_spline(args, out):
    knots = _values(args.knots, args.float, "--knots")
    pp = bspline.piecewise_expand(knots)
    samples = []
    if args.grid:
        lo, hi = pp.support
        for i in range(args.grid + 1):
            x = lo + (hi - lo) * Fraction(i, args.grid) if pp.exact else lo + (hi - lo) * i / args.grid
            samples.append((format_value(x), format_value(pp(x))))
    if args.format == "csv":
        _write_csv(out, ["x", "value"], samples)
    else:
        data = {"spline": pp.to_dict()}
        if args.grid:
            data["samples"] = [{"x": x, "value": v} for x, v in samples]
        out.write(dumps(data))


def cmd_dist(args, out):
    gens = _ints(args.gens, "--gens")
    w = _values(args.weights, args.float, "--weights")
    if args.bins:
        data = stats.histogram(gens, w, args.n, args.bins)
    else:
        data = stats.dot_plot(gens, w, args.n, zero_rows=not args.no_zero_rows)
    _emit(out, args.format, data)


def _parse_rows(text):
    parts = text.split(";")
    if len(parts) != 2:
        raise ParseError("--matrix: expected two rows separated by ';'")
    return _ints(parts[0], "--matrix row 1"), _ints(parts[1], "--matrix row 2")


def cmd_approx(args, out):
    top, bottom = _parse_rows(args.matrix)
    A = system(top, bottom)
    rows = []
    for i, spec in enumerate(args.b):
        m, n = _ints(spec, f"--b[{i}]")
        t = vpf(A, (m, n))
        T = truncated_power(A, m, n)
        rows.append({"m": m, "n": n, "vpf": t, "T_A": format_value(T), "T_A_float": float(T),
                     "normalized_estimate": normalized_estimate(A, (m, n))})
    if args.format == "csv":
        header = ["m", "n", "vpf", "T_A", "T_A_float", "normalized_estimate"]
        _write_csv(out, header, [[r[h] for h in header] for r in rows])
    else:
        out.write(dumps({"weights": top, "generators": bottom, "rows": rows}))


def load_descriptors(path, allow_float=False):
    """Read and validate a JSON array of instance descriptors."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from None
    if not isinstance(raw, list):
        raise ParseError(f"{path}: expected a JSON array of descriptors")
    out = []
    for i, d in enumerate(raw):
        where = f"{path}[{i}]"
        if not isinstance(d, dict):
            raise ParseError(f"{where}: expected an object")
        for key in ("generators", "weights", "n"):
            if key not in d:
                raise ParseError(f"{where}.{key}: missing")
        desc = {
            "generators": _ints(d["generators"], f"{where}.generators"),
            "weights": _values(d["weights"], allow_float, f"{where}.weights"),
            "n": _ints([d["n"]], f"{where}.n")[0],
        }
        if len(desc["weights"]) != len(desc["generators"]):
            raise ParseError(f"{where}.weights: length differs from generators")
        if "m" in d:
            desc["m"] = _ints([d["m"]], f"{where}.m")[0]
        interval = d.get("interval")
        if interval is not None:
            if not isinstance(interval, list) or len(interval) != 2:
                raise ParseError(f"{where}.interval: expected [alpha, beta]")
            d = {**d, "alpha": interval[0], "beta": interval[1]}
        for key in ("alpha", "beta"):
            if d.get(key) is not None:
                desc[key] = _endpoint(d[key], allow_float, f"{where}.{key}")
        if "function" in d:
            desc["function"] = str(d["function"])
        if "bins" in d:
            desc["bins"] = _ints([d["bins"]], f"{where}.bins")[0]
        out.append(desc)
    return out


def verify_reports(theorem, descriptors):
    return [bounds.run_descriptor(theorem, d) for d in descriptors]


def cmd_verify(args, out):
    descs = load_descriptors(args.file, args.float)
    reports = verify_reports(args.theorem, descs)
    if args.format == "csv":
        header = ["theorem", "instance", "lhs", "bound", "slack", "pass"]
        rows = [[r.theorem, json.dumps(r.instance, sort_keys=True), format_value(r.lhs),
                 r.bound, r.slack, r.passed] for r in reports]
        _write_csv(out, header, rows)
    else:
        out.write(dumps([r.to_dict() for r in reports]))


def cmd_stats(args, out):
    gens = _ints(args.gens, "--gens")
    w = _values(args.weights, args.float, "--weights")
    if args.function is None:
        _emit(out, args.format, stats.summary(gens, w, args.n))
        return
    a = _endpoint(args.alpha, args.float, "--alpha")
    b = _endpoint(args.beta, args.float, "--beta")
    actual, predicted = stats.f_statistic(gens, w, args.n, args.function, a, b)
    row = {"function": args.function, "actual": format_value(actual),
           "actual_float": float(actual), "predicted": format_value(predicted),
           "predicted_float": float(predicted)}
    if args.format == "csv":
        _write_csv(out, list(row), [list(row.values())])
    else:
        out.write(dumps(row))


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semispline", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt="json"):
        sp.add_argument("--format", choices=("json", "csv"), default=fmt)
        sp.add_argument("--float", action="store_true",
                        help="read numbers as floats instead of exact rationals")
        return sp

    sp = common(sub.add_parser("factorizations", help="list Z_S(n)"))
    sp.add_argument("--gens", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--limit", type=int, default=1_000_000)
    sp.set_defaults(func=cmd_factorizations)

    sp = common(sub.add_parser("count", help="count factorizations"))
    sp.add_argument("--gens", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--weights")
    sp.add_argument("--alpha", help="lower bound on the weighted length")
    sp.add_argument("--beta", help="upper bound on the weighted length")
    sp.set_defaults(func=cmd_count)

    sp = common(sub.add_parser("spline", help="piecewise form of M(x; knots)"))
    sp.add_argument("--knots", required=True)
    sp.add_argument("--grid", type=int, default=0, help="also sample at grid+1 points")
    sp.set_defaults(func=cmd_spline)

    sp = common(sub.add_parser("dist", help="dot plot or histogram data"))
    sp.add_argument("--gens", required=True)
    sp.add_argument("--weights", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bins", type=int, help="histogram instead of dot plot")
    sp.add_argument("--no-zero-rows", action="store_true")
    sp.set_defaults(func=cmd_dist)

    sp = common(sub.add_parser("approx", help="t_A versus T_A"))
    sp.add_argument("--matrix", required=True, help='rows like "2,3,3;3,4,6"')
    sp.add_argument("--b", action="append", required=True, help="m,n (repeatable)")
    sp.set_defaults(func=cmd_approx)

    sp = common(sub.add_parser("verify", help="check a bound over a descriptor file"))
    sp.add_argument("theorem", choices=("theorem-a", "theorem-b", "theorem-c"))
    sp.add_argument("--file", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("stats", help="summary statistics or an f-statistic"))
    sp.add_argument("--gens", required=True)
    sp.add_argument("--weights", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--function")
    sp.add_argument("--alpha")
    sp.add_argument("--beta")
    sp.set_defaults(func=cmd_stats)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except ParseError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc.reason}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: invalid-input: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
