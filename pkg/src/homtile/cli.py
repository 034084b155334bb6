"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 input error, 3 resource cap hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import time
from fractions import Fraction

from .audits import audit_extremal_tiling, audit_k333
from .constructions import (
    ExtremalSpec,
    SpecError,
    blow_up,
    build_extremal_graph,
    build_k333_counterexample,
    pattern_from_graph,
    random_graph,
    standard_pattern,
    suggest_parameters,
)
from .graphs import GraphFormatError, Pattern, read_graph, write_graph
from .homs import ColumnLimitExceeded, count_homomorphisms, enumerate_columns
from .lab import check_cover_bound
from .lp import LazyIterationLimit
from .tiling import (
    SearchLimitExceeded,
    check_cover,
    check_tiling,
    fractional_cover_number,
    fractional_tiling_number,
    integral_tiling_number,
    verify_duality,
)

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

CSV_VERSION = "homtile-verify-csv v1"
CSV_COLUMNS = ["instance", "n", "x", "hypothesis", "cover", "xn", "slack", "bound", "duality"]

_FRACTION_RE = re.compile(r"^-?\d+(/\d+)?$")


class InputError(Exception):
    pass


class ResourceError(Exception):
    pass


def fraction_arg(text: str) -> Fraction:
    """Exact 'p/q' or integer; decimals are rejected."""
    if not _FRACTION_RE.match(text.strip()):
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer or an exact fraction p/q")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"{text!r} has zero denominator") from None


def nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 0:
        raise argparse.ArgumentTypeError("caps must be nonnegative")
    return v


def _load_pattern(spec: str) -> Pattern:
    if os.path.exists(spec):
        return pattern_from_graph(read_graph(spec))
    return standard_pattern(spec)


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _write_out(g, path, fmt="json"):
    with open(path, "w") as fh:
        fh.write(write_graph(g, fmt))


# --- commands ----------------------------------------------------------------

def cmd_homs(args) -> int:
    h, g = _load_pattern(args.pattern), read_graph(args.graph)
    count = count_homomorphisms(h, g)
    payload = {"count": count}
    text = str(count)
    if args.columns:
        cols = enumerate_columns(h, g)
        _cap_columns(args, len(cols))
        payload["columns"] = [{"multiplicities": {str(v): m for v, m in c.multiplicities},
                               "class_size": c.class_size} for c in cols]
        text += "".join("\n" + " ".join(f"{v}:{m}" for v, m in c.multiplicities) + f" x{c.class_size}"
                        for c in cols)
    _emit(args, payload, text)
    return EXIT_OK


def _cap_columns(args, count):
    if args.max_columns is not None and count > args.max_columns:
        raise ResourceError(f"{count} columns exceed --max-columns {args.max_columns}")


def _columns(args, h, g):
    cols = enumerate_columns(h, g)
    _cap_columns(args, len(cols))
    return cols


def cmd_tile(args) -> int:
    h, g = _load_pattern(args.pattern), read_graph(args.graph)
    if args.integral:
        value, tiling = integral_tiling_number(g, h, max_nodes=args.max_nodes,
                                               time_budget=args.time_budget_secs)
        _emit(args, {"integral_tiling_number": value, "certificate": tiling.to_json()}, str(value))
        return EXIT_OK
    cols = _columns(args, h, g)
    value, tiling = fractional_tiling_number(g, h, cols)
    ok = bool(check_tiling(g, h, tiling, cols))
    _emit(args, {"fractional_tiling_number": str(value), "certificate": tiling.to_json(),
                 "certificate_ok": ok}, str(value))
    return EXIT_OK if ok else EXIT_CHECK


def cmd_cover(args) -> int:
    h, g = _load_pattern(args.pattern), read_graph(args.graph)
    value, cover = fractional_cover_number(g, h)
    cols = _columns(args, h, g)
    ok = bool(check_cover(g, h, cover, cols))
    _emit(args, {"fractional_cover_number": str(value), "certificate": cover.to_json(),
                 "certificate_ok": ok}, str(value))
    return EXIT_OK if ok else EXIT_CHECK


def cmd_duality(args) -> int:
    h, g = _load_pattern(args.pattern), read_graph(args.graph)
    cols = _columns(args, h, g)
    rep = verify_duality(g, h, cols)
    _emit(args, {"tiling": str(rep.tiling_value), "cover": str(rep.cover_value), "equal": rep.equal,
                 "tiling_certificate": rep.tiling.to_json(), "cover_certificate": rep.cover.to_json()},
          str(rep))
    return EXIT_OK if rep.equal else EXIT_CHECK


def cmd_extremal(args) -> int:
    h = _load_pattern(args.H)
    r = args.r if args.r is not None else h.r
    if r != h.r:
        h = pattern_from_graph(h.graph, r)
    spec = ExtremalSpec(r, h.size, h.ell_r, args.x, args.n)
    try:
        g = build_extremal_graph(spec)
    except SpecError as exc:
        near = suggest_parameters(r, h.size, h.ell_r, args.x, args.n)
        hint = ", ".join(f"x={x} n={n}" for x, n in near)
        raise SpecError(f"{exc}; try {hint}" if hint else str(exc)) from None
    if args.out:
        _write_out(g, args.out)
    sizes = tuple(len(g.parts[k]) for k in ("V1", "V2", "V3", "S"))
    payload = {"parts": dict(zip(("V1", "V2", "V3", "S"), sizes)), "delta": str(spec.delta)}
    text = "parts " + " ".join(map(str, sizes))
    status = EXIT_OK
    if args.audit:
        rep = audit_extremal_tiling(spec, h, max_nodes=args.max_nodes, time_budget=args.time_budget_secs)
        payload["audit"] = rep.to_json()
        text += f"\ntiling {rep.tiling_number} {'=' if rep.tiling_number == spec.xn else '!='} xn = {spec.xn}"
        text += f"\naudit {'ok' if rep.ok else 'FAILED: ' + rep.failure}"
        status = EXIT_OK if rep.ok else EXIT_CHECK
    if not args.out and args.format == "json":
        payload["graph"] = json.loads(write_graph(g, "json"))
    _emit(args, payload, text)
    return status


def cmd_k333(args) -> int:
    g = build_k333_counterexample(args.x, args.n)
    if args.out:
        _write_out(g, args.out)
    sizes = tuple(len(g.parts[k]) for k in ("V1", "V2", "V3", "V4"))
    payload = {"parts": dict(zip(("V1", "V2", "V3", "V4"), sizes))}
    text = "parts " + " ".join(map(str, sizes))
    status = EXIT_OK
    if args.audit:
        rep = audit_k333(args.x, args.n, max_nodes=args.max_nodes, time_budget=args.time_budget_secs)
        payload["audit"] = rep.to_json()
        text += (f"\nhigh-degree vertices {rep.high_degree_count} (required {rep.required_count},"
                 f" delta {rep.delta})\ninteger tiling {rep.tiling_number} vs xn = {rep.xn}")
        status = EXIT_OK if rep.ok else EXIT_CHECK
    _emit(args, payload, text)
    return status


def cmd_blowup(args) -> int:
    g = blow_up(read_graph(args.graph), args.s)
    out = write_graph(g, "json" if args.format == "json" else "text")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_gen_random(args) -> int:
    g = random_graph(args.n, args.p, args.seed)
    out = write_graph(g, "json" if args.format == "json" else "text")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def _verify_instances(args):
    items = []
    for path in args.graph or []:
        items.append((os.path.basename(path), read_graph(path)))
    if args.corpus:
        for name in sorted(os.listdir(args.corpus)):
            if name.endswith((".json", ".txt", ".graph")):
                items.append((name, read_graph(os.path.join(args.corpus, name))))
    for i in range(args.random or 0):
        seed = args.seed + i
        items.append((f"random-{seed:05d}", random_graph(args.n, args.p, seed)))
    if not items:
        raise InputError("verify needs --graph, --corpus or --random")
    return sorted(items, key=lambda kv: kv[0])


def cmd_verify(args) -> int:
    h = _load_pattern(args.pattern)
    if args.x is None:
        raise InputError("verify needs --x")
    rows, failed = [], False
    deadline = None if args.time_budget_secs is None else time.monotonic() + args.time_budget_secs
    for name, g in _verify_instances(args):
        if deadline is not None and time.monotonic() > deadline:
            raise ResourceError("verify exceeded its time budget")
        cols = _columns(args, h, g)
        rep = verify_duality(g, h, cols)
        cert_ok = bool(check_tiling(g, h, rep.tiling, cols)) and bool(check_cover(g, h, rep.cover, cols))
        bound = check_cover_bound(g, h, args.x, cover=(rep.cover_value, rep.cover))
        met = bound.status != "hypothesis-not-met"
        dual_ok = rep.equal and cert_ok
        failed |= not dual_ok or bound.status == "violated"
        rows.append({
            "instance": name, "n": g.n, "x": str(Fraction(args.x)),
            "hypothesis": "yes" if met else "no",
            "cover": str(rep.cover_value), "xn": str(Fraction(args.x) * g.n),
            "slack": str(bound.slack) if met else "",
            "bound": bound.status if met else "skipped",
            "duality": "ok" if dual_ok else "FAIL",
        })
    if args.format == "json":
        print(json.dumps(rows, sort_keys=True))
    elif args.format == "text":
        for row in rows:
            print(" ".join(f"{k}={row[k]}" for k in CSV_COLUMNS))
    else:
        buf = io.StringIO()
        buf.write(f"# {CSV_VERSION}\n")
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    return EXIT_CHECK if failed else EXIT_OK


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-columns", type=nonneg_int)
    common.add_argument("--max-nodes", type=nonneg_int)
    common.add_argument("--time-budget-secs", type=nonneg_int)

    parser = argparse.ArgumentParser(prog="homtile", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--pattern", required=True, help="pattern name (K3, P3, K_{3,3,3}) or graph file")
        p.add_argument("--graph", required=True)
        p.set_defaults(func=fn)
        return p

    graph_cmd("homs", cmd_homs, "count homomorphisms").add_argument("--columns", action="store_true")
    graph_cmd("tile", cmd_tile, "tiling number").add_argument("--integral", action="store_true")
    graph_cmd("cover", cmd_cover, "fractional cover number")
    graph_cmd("duality", cmd_duality, "compare tiling and cover numbers")

    p = sub.add_parser("extremal", parents=[common], help="extremal four-part graph")
    p.add_argument("--r", type=int)
    p.add_argument("--H", required=True)
    p.add_argument("--x", type=fraction_arg, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--audit", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("k333", parents=[common], help="K_{3,3,3} example with a spanning cycle")
    p.add_argument("--x", type=fraction_arg, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--audit", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_k333)

    p = sub.add_parser("blowup", parents=[common], help="blow-up of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("gen-random", parents=[common], help="seeded G(n, p)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=fraction_arg, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_random)

    p = sub.add_parser("verify", parents=[common], help="batch duality and cover-bound check")
    p.add_argument("--pattern", required=True)
    p.add_argument("--x", type=fraction_arg)
    p.add_argument("--graph", action="append")
    p.add_argument("--corpus")
    p.add_argument("--random", type=nonneg_int)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--p", type=fraction_arg, default=Fraction(1, 2))
    p.set_defaults(func=cmd_verify, format="csv")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ResourceError, ColumnLimitExceeded, SearchLimitExceeded, LazyIterationLimit) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, GraphFormatError, SpecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
