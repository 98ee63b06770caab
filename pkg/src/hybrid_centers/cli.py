"""Command-line front end.

Exit status: 0 on success, 1 when an analysis raises, 2 for a bad spec or
bad flags, 3 when ``--strict`` was given and a verdict came out Undetermined.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import warnings
from pathlib import Path

from .asymptotics import UNDETERMINED, orbit_fate
from .chaos import certify_theorem3, dense_orbit_witness
from .core import PlanePoint
from .cycles import affine_regular_cycle, find_cycles
from .errors import HybridError, SpecError
from .orbit import global_orbit
from .return_map import build_partition
from .specfile import dumps, load_spec, parse_spec, spec_to_dict, logistic_example_spec

EXIT_OK, EXIT_ANALYSIS, EXIT_SPEC, EXIT_UNDETERMINED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _fmt(v):
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        text = format(v, ".17g")
        return text if any(ch in text for ch in ".en") else text + ".0"
    return "" if v is None else str(v)


def _write_csv(header, rows, path):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    text = buf.getvalue()
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _pair(text, sep, name, kinds=(float, float)):
    parts = text.split(sep)
    if len(parts) != len(kinds):
        raise UsageError(f"{name} expects {len(kinds)} values separated by {sep!r}, got {text!r}")
    try:
        return tuple(k(p) for k, p in zip(kinds, parts))
    except ValueError:
        raise UsageError(f"malformed {name}: {text!r}") from None


def _intervals(parts):
    return [[lo, hi] for lo, hi in parts]


def cmd_partition(system, analysis, args):
    part = build_partition(system)
    out = {f"J{br.id}": _intervals(br.domain) for br in part.branches}
    out["boundary_points"] = list(part.boundary_points)
    out["eta"] = [part.eta1, part.eta2]
    out["folds"] = {
        "side1": {"y": part.side1.fold, "kind": part.side1.fold_kind},
        "side2": {"y": part.side2.fold, "kind": part.side2.fold_kind},
    }
    print(dumps(out))
    if args.figure:
        from .plotting import plot_cobweb, return_map_samples

        lo, hi = _plot_window(part)
        plot_cobweb(return_map_samples(system, part, lo, hi, 801), [], args.figure, lo, hi)
    return EXIT_OK


def _plot_window(part):
    pts = part.boundary_points
    if not pts:
        return -2.0, 2.0
    lo, hi = min(pts), max(pts)
    span = max(hi - lo, 1.0)
    return lo - span / 2, hi + span / 2


def cmd_cycles(system, analysis, args):
    max_period = args.max_period or analysis.get("max_period", 1)
    cap = analysis.get("degree_cap", 4096)
    out = {}
    if system.degree == 1:
        out["affine"] = affine_regular_cycle(system).to_dict()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        cycles = find_cycles(system, max_period=max_period, degree_cap=cap,
                             regular_only=args.regular_only)
    out["cycles"] = [c.to_dict() for c in cycles]
    notes = [str(w.message) for w in caught]
    if notes:
        out["warnings"] = notes
    print(dumps(out))
    return EXIT_OK


def cmd_fate(system, analysis, args):
    y0, y1, count = _pair(args.grid, ":", "--grid", (float, float, int))
    if count < 1:
        raise UsageError("--grid count must be positive")
    max_iter = args.max_iter or analysis.get("max_iter", 1000)
    part = build_partition(system)
    try:
        with warnings.catch_warnings():
            # a continuum only matters to `cycles`; the fate verdict covers it
            warnings.simplefilter("ignore", RuntimeWarning)
            cycles = find_cycles(system, part, max_period=1)
    except HybridError:
        cycles = []
    rows = []
    for i in range(count):
        y = y0 if count == 1 else y0 + (y1 - y0) * i / (count - 1)
        rep = orbit_fate(system, part, y, max_iter, cycles)
        rows.append((y, rep.verdict, rep.iterations_used, rep.bound))
    _write_csv(("y", "verdict", "iterations", "bound"), rows, args.output)
    if args.figure:
        from .plotting import plot_fate

        plot_fate(rows, args.figure)
    if args.strict and any(r[1] == UNDETERMINED for r in rows):
        return EXIT_UNDETERMINED
    return EXIT_OK


def trace_rows(trace):
    rows = []
    for ev in trace.events:
        if ev.kind == "arc":
            rows.append((ev.index, "arc", ev.t_start, ev.arc.duration, ev.arc.start.x, ev.arc.start.y))
        elif ev.kind == "jump":
            rows.append((ev.index, "jump", ev.t_start, 0.0, 0.0, ev.from_y))
        else:
            rows.append((ev.index, f"stop:{ev.reason}", ev.t_start, 0.0, ev.point.x, ev.point.y))
    return rows


def cmd_simulate(system, analysis, args):
    x, y = _pair(args.q, ",", "--q")
    max_events = args.max_events or analysis.get("max_events", 200)
    max_time = args.max_time or analysis.get("max_time", math.inf)
    trace = global_orbit(system, PlanePoint(x, y), which=args.which, max_events=max_events,
                         max_time=max_time, tol=analysis.get("tol"))
    _write_csv(("event_index", "kind", "t_start", "duration", "x", "y"), trace_rows(trace), args.output)
    print(f"terminated: {trace.terminated}; total_time {_fmt(trace.total_time)}", file=sys.stderr)
    if args.figure:
        from .plotting import plot_trace

        plot_trace(trace, args.figure)
    return EXIT_OK


def cmd_cobweb(system, analysis, args):
    from .plotting import cobweb_path, plot_cobweb, return_map_samples

    lo, hi = _pair(args.range, ":", "--range")
    if not lo < hi:
        raise UsageError("--range needs lo < hi")
    part = build_partition(system)
    graph = return_map_samples(system, part, lo, hi, args.samples)
    web = cobweb_path(system, part, args.start, args.steps) if args.start is not None else []
    rows = [("graph", y, v, j) for y, v, j in graph] + [("cobweb", a, b, "") for a, b in web]
    _write_csv(("series", "y", "value", "branch"), rows, args.output)
    if args.figure:
        plot_cobweb(graph, web, args.figure, lo, hi)
    return EXIT_OK


def cmd_chaos_demo(system, analysis, args):
    seed = args.seed if args.seed is not None else analysis.get("seed", 0)
    cert = certify_theorem3(system, seed=seed)
    print(dumps(cert.to_dict()))
    rows = dense_orbit_witness(8)
    _write_csv(("m", "x", "h_x"), rows, args.output or "dense_orbit_witness.csv")
    if args.figure:
        from .plotting import plot_witness

        plot_witness(rows, args.figure)
    return EXIT_OK


COMMANDS = {
    "partition": cmd_partition,
    "cycles": cmd_cycles,
    "fate": cmd_fate,
    "simulate": cmd_simulate,
    "cobweb": cmd_cobweb,
    "chaos-demo": cmd_chaos_demo,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--print-spec", action="store_true", help="echo the parsed spec and exit")
    common.add_argument("--strict", action="store_true", help="exit 3 on an Undetermined verdict")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("-o", "--output", default=None, help="CSV output path (default stdout)")
    common.add_argument("--figure", "--svg", dest="figure", default=None,
                        help="write a figure (format from the extension, e.g. .svg)")

    parser = argparse.ArgumentParser(prog="hybrid-centers",
                                     description="Analyse two linear centers joined by a polynomial reset.")
    sub = parser.add_subparsers(dest="command", required=True)

    def spec_cmd(name, help_text, optional=False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if optional:
            p.add_argument("spec", nargs="?", default=None)
            p.add_argument("--spec", dest="spec_opt", default=None)
        else:
            p.add_argument("spec")
        return p

    spec_cmd("partition", "branch domains of the return map")
    p = spec_cmd("cycles", "periodic points of the return map")
    p.add_argument("--max-period", type=int, default=None)
    p.add_argument("--regular-only", action="store_true")
    p = spec_cmd("fate", "classify orbits over a grid of initial y")
    p.add_argument("--grid", required=True, help="y0:y1:count")
    p.add_argument("--max-iter", type=int, default=None)
    p = spec_cmd("simulate", "one global orbit as CSV events")
    p.add_argument("--q", required=True, help="x,y")
    p.add_argument("--which", type=int, choices=(1, 2), default=1)
    p.add_argument("--max-events", type=int, default=None)
    p.add_argument("--max-time", type=float, default=None)
    p = spec_cmd("cobweb", "sampled return map and a cobweb")
    p.add_argument("--range", default="-2:2", help="lo:hi")
    p.add_argument("--samples", type=int, default=401)
    p.add_argument("--start", type=float, default=None)
    p.add_argument("--steps", type=int, default=30)
    spec_cmd("chaos-demo", "chaos certificate for the degree-two example", optional=True)
    return parser


def _load(args):
    path = args.spec or getattr(args, "spec_opt", None)
    if path is None:
        return parse_spec(logistic_example_spec())
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read spec: {exc.strerror}", field=str(path)) from None
    return load_spec(text)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SPEC if exc.code else EXIT_OK
    try:
        system, analysis = _load(args)
    except SpecError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    if args.print_spec:
        print(dumps(spec_to_dict(system, analysis)))
        return EXIT_OK
    try:
        return COMMANDS[args.command](system, analysis, args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except HybridError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS


if __name__ == "__main__":
    sys.exit(main())
