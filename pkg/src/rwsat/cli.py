"""Command-line entry point: ``rwsat <command> [options]``.

Every command prints a plain table on stdout and can write its result as
JSON (``--json PATH``, or ``--json -`` for stdout only). With ``--cache PATH``
results are appended to a JSON-lines file and served from it on identical
re-runs. Exit status: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import fcntl
import json
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .constructions import (
    bridged_cliques_construction,
    c4_construction,
    clique_plus_isolated,
    complete_graph_construction,
    expected_edges,
    family_F_construction,
    subadditive_join,
    three_block,
)
from .errors import Graph6Error, RwsatError
from .extremal import TURAN_BUDGET, f_interval, named_pattern, paper_bounds, pattern_profile, turan_ex
from .graph import SimpleGraph, decode_graph6, encode_graph6
from .rainbow import ColoredGraph, format_color_map, parse_color_map
from .search import exact_rwsat
from .verifier import (
    format_certificate,
    greedy_closure,
    parse_certificate,
    verify_certificate,
)

KINDS = ("clique-isolated", "three-block", "kr", "family-f", "c4", "join", "bridged")
TIMING_KEYS = ("timing", "timestamp")


def graph_arg(text: str) -> SimpleGraph:
    """graph6, or a name such as ``K3``, ``C5``, ``P3`` or ``B3``."""
    if len(text) >= 2 and text[0] in "KCPB" and text[1:].isdigit():
        return named_pattern(text)
    try:
        return decode_graph6(text)
    except Graph6Error as exc:
        raise argparse.ArgumentTypeError(f"invalid graph {text!r}: {exc}") from None


# -- cache ---------------------------------------------------------------------


class ResultCache:
    """Append-only JSON-lines file of run records, guarded by ``flock``."""

    def __init__(self, path: Path):
        self.path = Path(path)

    @staticmethod
    def key(command: str, params: dict) -> str:
        return json.dumps({"command": command, "params": params, "version": __version__}, sort_keys=True)

    def get(self, command: str, params: dict):
        if not self.path.exists():
            return None
        wanted = self.key(command, params)
        found = None
        with open(self.path) as fh:
            fcntl.flock(fh, fcntl.LOCK_SH)
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                if self.key(rec["command"], rec["params"]) == wanted and rec.get("version") == __version__:
                    found = rec
        return found

    def put(self, record: dict) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            fh.write(json.dumps(record, sort_keys=True) + "\n")


def strip_timing(obj):
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k not in TIMING_KEYS}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def run_record(command: str, params: dict, result: dict) -> dict:
    return {
        "command": command,
        "params": params,
        "result": result,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


# -- table output ---------------------------------------------------------------


def table(rows, header=None) -> str:
    rows = [[str(c) for c in r] for r in rows]
    if header:
        rows.insert(0, list(header))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def colored_json(gc: ColoredGraph) -> list:
    return [[u, v, c] for (u, v), c in gc.color_map.items()]


# -- commands ---------------------------------------------------------------------


def cmd_analyze(args):
    h = args.pattern
    prof = pattern_profile(h, budget=args.budget)
    result = {
        "pattern": encode_graph6(h),
        "vertices": h.n,
        "edges": h.num_edges,
        "delta_prime": prof.delta_prime,
        "has_pendant": prof.has_pendant,
        "peeled_family": [encode_graph6(g) for g in prof.peeled_family],
        "f": prof.f_value,
        "f_interval": list(prof.f_interval),
        "family_F_witness": list(prof.family_F_witness) if prof.family_F_witness else None,
    }
    f_text = str(prof.f_value) if prof.f_value is not None else "[{}, {}]".format(*prof.f_interval)
    rows = [
        ("pattern", result["pattern"]),
        ("delta'", prof.delta_prime),
        ("pendant edge", "yes" if prof.has_pendant else "no"),
        ("peeled family", " ".join(result["peeled_family"]) or "-"),
        ("f(H)", f_text),
        ("family F witness", "{}-{}".format(*prof.family_F_witness) if prof.family_F_witness else "none"),
    ]
    return result, table(rows)


def _load_colored(graph: SimpleGraph, colors_path) -> ColoredGraph:
    if colors_path is None:
        return ColoredGraph.rainbow(graph)
    return ColoredGraph.from_mapping(graph, parse_color_map(Path(colors_path).read_text()))


def cmd_construct(args):
    kind, n = args.kind, args.n
    h = args.pattern
    if kind in ("clique-isolated", "three-block", "family-f") and h is None:
        raise UsageError(f"--kind {kind} needs --pattern")
    if kind != "join" and n is None:
        raise UsageError(f"--kind {kind} needs --n")
    extra = {}
    if kind == "clique-isolated":
        gc = clique_plus_isolated(n, h)
    elif kind == "three-block":
        gc = three_block(n, h)
    elif kind == "kr":
        r = args.r or (h.n if h is not None else None)
        if r is None:
            raise UsageError("--kind kr needs --r or a complete --pattern")
        gc = complete_graph_construction(n, r)
        extra["r"] = r
    elif kind == "family-f":
        gc = family_F_construction(n, h)
    elif kind == "c4":
        gc = c4_construction(n)
    elif kind == "bridged":
        if args.r is None:
            raise UsageError("--kind bridged needs --r (the clique order t)")
        gc = bridged_cliques_construction(n, args.r)
        extra["t"] = args.r
    else:
        if args.graph is None or args.graph2 is None:
            raise UsageError("--kind join needs --graph and --graph2")
        g1 = _load_colored(args.graph, args.colors)
        g2 = _load_colored(args.graph2, args.colors2)
        if args.colors2 is None:
            g2 = ColoredGraph.rainbow(args.graph2, start=max(g1.colors, default=0) + 1)
        t = args.t or max(h.n if h is not None else 0, 3)
        bp = subadditive_join(g1, g2, t, args.a_size, args.b_threshold)
        gc = bp.joined
        extra.update({
            "t": t, "a_size": bp.a_size, "b_threshold": bp.b_threshold,
            "blocks": {name: [list(p) for p in getattr(bp, name)] for name in "xabc"},
            "join_edges": bp.join_edges,
        })
        expected = g1.graph.num_edges + g2.graph.num_edges + bp.join_edges
    if kind != "join":
        expected = expected_edges(kind, n, h, extra.get("r", extra.get("t")))
    result = {
        "kind": kind,
        "n": gc.graph.n,
        "graph6": encode_graph6(gc.graph),
        "edges": gc.graph.num_edges,
        "expected_edges": expected,
        "colors": colored_json(gc),
        **extra,
    }
    if args.pattern is not None and args.check:
        result["saturated"] = greedy_closure(gc, args.pattern).saturated
    if args.colors_out:
        Path(args.colors_out).write_text(format_color_map(gc))
    rows = [("kind", kind), ("graph6", result["graph6"]), ("vertices", result["n"]),
            ("edges", result["edges"]), ("closed form", expected)]
    if "saturated" in result:
        rows.append(("saturated", result["saturated"]))
    return result, table(rows) + "\n" + format_color_map(gc).rstrip()


def cmd_verify(args):
    gc = _load_colored(args.graph, args.colors)
    h = args.pattern
    if args.check:
        cert = parse_certificate(Path(args.check).read_text())
        res = verify_certificate(gc, h, cert)
        result = {"accepted": res.accepted, "failed_step": res.failed_step,
                  "failed_edge": list(res.failed_edge) if res.failed_edge else None,
                  "breaking": str(res.breaking) if res.breaking else None}
        text = "certificate accepted" if res.accepted else (
            f"certificate rejected at step {res.failed_step} ({res.failed_edge[0]} {res.failed_edge[1]}); "
            f"breaking colours: {res.breaking}")
        return result, text
    closure = greedy_closure(gc, h)
    result = {
        "graph6": encode_graph6(gc.graph),
        "pattern": encode_graph6(h),
        "saturated": closure.saturated,
        "ordering": [list(e) for e in closure.ordering],
        "stuck": [list(e) for e in closure.stuck],
    }
    lines = ["saturated" if closure.saturated else "not saturated"]
    if closure.saturated:
        text = format_certificate(closure.certificate(h))
        result["certificate"] = text
        if args.certificate:
            Path(args.certificate).write_text(text)
            result["certificate_path"] = str(args.certificate)
            lines.append(f"certificate: {args.certificate}")
    else:
        lines.append("stuck non-edges: " + " ".join(f"{u}-{v}" for u, v in closure.stuck))
    return result, "\n".join(lines)


def _bounds_json(b):
    return {
        "lower": b.lower, "upper": b.upper,
        "lower_source": b.lower_source, "upper_source": b.upper_source,
        "inapplicable": [{"side": t.side, "source": t.source, "reason": t.reason} for t in b.inapplicable()],
    }


def cmd_rwsat(args):
    res = exact_rwsat(args.n, args.pattern, budget=args.budget, jobs=args.jobs)
    bounds = paper_bounds(args.n, args.pattern)
    result = res.to_json()
    result["bounds"] = _bounds_json(bounds)
    value = res.value if res.exact else f"[{res.lower}, {res.upper}]"
    rows = [("n", res.n), ("pattern", res.pattern), ("rwsat", value),
            ("bound lower", f"{bounds.lower} ({bounds.lower_source})"),
            ("bound upper", f"{bounds.upper} ({bounds.upper_source})"),
            ("witnesses", " ".join(res.witnesses) or "-")]
    return result, table(rows)


def cmd_turan(args):
    ex = turan_ex(args.n, args.family, budget=args.budget or TURAN_BUDGET)
    result = {"n": args.n, "family": [encode_graph6(f) for f in args.family],
              "ex": ex.edges, "no_free_graph": ex.no_free_graph}
    return result, table([("n", args.n), ("family", " ".join(result["family"])), ("ex", str(ex))])


def cmd_f_of_h(args):
    lo, hi = f_interval(args.pattern, budget=args.budget)
    result = {"pattern": encode_graph6(args.pattern), "f": lo if lo == hi else None, "interval": [lo, hi],
              "bounds": [args.pattern.n - 1, 5 * args.pattern.n]}
    return result, table([("pattern", result["pattern"]), ("f(H)", lo if lo == hi else f"[{lo}, {hi}]")])


def cmd_bench(args):
    h = args.pattern
    rows, records = [], []
    for n in range(args.n_min, args.n_max + 1):
        b = paper_bounds(n, h)
        res = exact_rwsat(n, h, budget=args.budget, jobs=args.jobs)
        inside = res.lower >= b.lower and res.upper <= b.upper if res.exact else None
        records.append({"n": n, "exact": res.value, "lower": res.lower, "upper": res.upper,
                        "bound_lower": b.lower, "bound_upper": b.upper,
                        "lower_source": b.lower_source, "upper_source": b.upper_source,
                        "within_bounds": inside, "timing": {"elapsed": round(res.elapsed, 3)}})
        rows.append((n, res.value if res.exact else f"[{res.lower},{res.upper}]",
                     b.lower, b.upper, b.lower_source, b.upper_source))
    result = {"pattern": encode_graph6(h), "rows": records,
              "note": "small-n data points only; not evidence about limits or asymptotic constants"}
    text = table(rows, ("n", "exact", "lower", "upper", "lower from", "upper from"))
    return result, text + "\n" + result["note"]


COMMANDS = {
    "analyze": cmd_analyze,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "rwsat": cmd_rwsat,
    "turan": cmd_turan,
    "f-of-h": cmd_f_of_h,
    "bench": cmd_bench,
}
CACHEABLE = {"analyze", "rwsat", "turan", "f-of-h", "bench"}


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rwsat", description="Weak rainbow saturation laboratory.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", metavar="PATH", help="write the JSON result here ('-' for stdout)")
        p.add_argument("--cache", metavar="PATH", help="JSON-lines result cache")
        return p

    p = common(sub.add_parser("analyze", help="pattern profile: delta', pendant edges, f(H), family F"))
    p.add_argument("--pattern", type=graph_arg, required=True)
    p.add_argument("--budget", type=int, default=TURAN_BUDGET,
                   help="max free graphs kept per Turán computation; beyond it f(H) is reported as an interval")

    p = common(sub.add_parser("construct", help="build one of the explicit constructions"))
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--pattern", type=graph_arg)
    p.add_argument("--r", type=int, help="clique order for kr and bridged")
    p.add_argument("--graph", type=graph_arg, help="first join input")
    p.add_argument("--graph2", type=graph_arg, help="second join input")
    p.add_argument("--colors", help="colour map for --graph")
    p.add_argument("--colors2", help="colour map for --graph2")
    p.add_argument("--t", type=int)
    p.add_argument("--a-size", type=int)
    p.add_argument("--b-threshold", type=int)
    p.add_argument("--check", action="store_true", help="also run the verifier against --pattern")
    p.add_argument("--colors-out", metavar="PATH", help="write the colour map sidecar here")

    p = common(sub.add_parser("verify", help="decide weak rainbow saturation of a coloured graph"))
    p.add_argument("--graph", type=graph_arg, required=True)
    p.add_argument("--colors", help="colour map file ('u v: color' lines); default rainbow")
    p.add_argument("--pattern", type=graph_arg, required=True)
    p.add_argument("--certificate", metavar="PATH", help="write the certificate here")
    p.add_argument("--check", metavar="CERT", help="replay an existing certificate instead")

    p = common(sub.add_parser("rwsat", help="exact rwsat(n, H) by exhaustive search"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", type=graph_arg, required=True)
    p.add_argument("--budget", type=int, help="max candidate graphs to check")
    p.add_argument("--jobs", type=int, default=1)

    p = common(sub.add_parser("turan", help="exact Turán number ex(n, family)"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", type=graph_arg, nargs="+", required=True)
    p.add_argument("--budget", type=int)

    p = common(sub.add_parser("f-of-h", help="the threshold f(H)"))
    p.add_argument("--pattern", type=graph_arg, required=True)
    p.add_argument("--budget", type=int, default=TURAN_BUDGET,
                   help="max free graphs kept per Turán computation; beyond it f(H) is reported as an interval")

    p = common(sub.add_parser("bench", help="closed-form bounds against exact values over a range of n"))
    p.add_argument("--pattern", type=graph_arg, required=True)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--budget", type=int)
    p.add_argument("--jobs", type=int, default=1)
    return parser


def _params(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in ("json", "cache", "command", "jobs"):
            continue
        if isinstance(v, SimpleGraph):
            v = encode_graph6(v)
        elif isinstance(v, list):
            v = [encode_graph6(x) if isinstance(x, SimpleGraph) else x for x in v]
        out[k] = v
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    params = _params(args)
    cache = ResultCache(args.cache) if args.cache and args.command in CACHEABLE else None
    try:
        record = cache.get(args.command, params) if cache else None
        if record is None:
            started = time.perf_counter()
            result, text = COMMANDS[args.command](args)
            record = run_record(args.command, params, result)
            record["timing"] = {"elapsed": round(time.perf_counter() - started, 3)}
            if cache:
                cache.put({**record, "table": text})
        else:
            text = record.pop("table")
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"rwsat: error: {exc}", file=sys.stderr)
        return 2
    except RwsatError as exc:
        print(f"rwsat: {exc}", file=sys.stderr)
        return 1
    payload = json.dumps(record, sort_keys=True, indent=2)
    if args.json == "-":
        print(payload)
    else:
        print(text)
        if args.json:
            Path(args.json).write_text(payload + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
