"""Static figures: orbit traces in the plane, return-map cobwebs, fate scans."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .errors import BoundaryPoint  # noqa: E402
from .return_map import eval_return  # noqa: E402

BRANCH_COLORS = {1: "tab:blue", 2: "tab:orange", 3: "tab:green", 4: "tab:red"}
SIDE_COLORS = {1: "tab:blue", 2: "tab:purple"}

plt.rcParams["svg.hashsalt"] = "hybrid-centers"


def _save(fig, path):
    fmt = str(path).rsplit(".", 1)[-1].lower()
    meta = {"Date": None} if fmt == "svg" else None
    fig.savefig(path, metadata=meta, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_trace(trace, path, title=None):
    """Arcs in the plane, jumps drawn as dotted chords along the switching line."""
    fig, ax = plt.subplots(figsize=(6, 6))
    ys = []
    for ev in trace.events:
        if ev.kind == "arc":
            pts = ev.arc.samples or (ev.arc.start, ev.arc.end)
            ax.plot([p.x for p in pts], [p.y for p in pts], color=SIDE_COLORS[ev.arc.center_side], lw=1.2)
            ys.extend(p.y for p in pts)
        elif ev.kind == "jump":
            ax.annotate("", xy=(0, ev.to_y), xytext=(0, ev.from_y),
                        arrowprops=dict(arrowstyle="->", ls=":", color="0.3", lw=0.9,
                                        connectionstyle="arc3,rad=0.35"))
            ys.extend((ev.from_y, ev.to_y))
    ax.axvline(0.0, color="0.6", lw=0.8, ls="--")
    ax.plot([trace.initial.x], [trace.initial.y], "ko", ms=4)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(title or f"orbit ({trace.terminated}, {len(trace.events)} events)")
    ax.set_aspect("equal", adjustable="datalim")
    return _save(fig, path)


def return_map_samples(system, partition, lo, hi, samples):
    """``(y, P(y), branch)`` on an even grid, skipping branch boundary points."""
    rows = []
    for i in range(samples):
        y = lo + (hi - lo) * i / max(samples - 1, 1)
        try:
            v, j = eval_return(system, partition, y)
        except BoundaryPoint:
            continue
        rows.append((y, v, j))
    return rows


def cobweb_path(system, partition, start, steps):
    pts = [(start, start)]
    y = start
    for _ in range(steps):
        try:
            v, _ = eval_return(system, partition, y)
        except BoundaryPoint:
            break
        if not math.isfinite(v):
            break
        pts.append((y, v))
        pts.append((v, v))
        y = v
    return pts


def plot_cobweb(graph_rows, web, path, lo, hi, title=None):
    fig, ax = plt.subplots(figsize=(6, 6))
    run = []
    prev = None
    for y, v, j in graph_rows:
        if prev is not None and j != prev and run:
            ax.plot(*zip(*run), color=BRANCH_COLORS[prev], lw=1.2)
            run = []
        run.append((y, v))
        prev = j
    if run:
        ax.plot(*zip(*run), color=BRANCH_COLORS[prev], lw=1.2)
    ax.plot([lo, hi], [lo, hi], color="0.5", lw=0.8, ls="--")
    if len(web) > 1:
        ax.plot(*zip(*web), color="k", lw=0.7)
    vals = [v for _, v, _ in graph_rows if math.isfinite(v)]
    if vals:
        span = hi - lo
        y_lo, y_hi = max(min(vals), lo - span), min(max(vals), hi + span)
        if y_lo < y_hi:
            ax.set_ylim(y_lo, y_hi)
    ax.set_xlim(lo, hi)
    ax.set_xlabel("y")
    ax.set_ylabel("P(y)")
    for j, c in BRANCH_COLORS.items():
        ax.plot([], [], color=c, label=f"branch {j}")
    ax.legend(loc="best", fontsize=8)
    ax.set_title(title or "first return map")
    return _save(fig, path)


def plot_fate(rows, path):
    verdicts = sorted({r[1] for r in rows})
    fig, ax = plt.subplots(figsize=(7, 2.8))
    for k, verdict in enumerate(verdicts):
        ys = [r[0] for r in rows if r[1] == verdict]
        ax.plot(ys, [k] * len(ys), "|", ms=12, label=verdict)
    ax.set_yticks(range(len(verdicts)), verdicts)
    ax.set_xlabel("initial y")
    ax.set_title("orbit fate")
    return _save(fig, path)


def plot_witness(rows, path):
    fig, ax = plt.subplots(figsize=(7, 3))
    ax.plot([r[0] for r in rows], [r[2] for r in rows], ".", ms=2)
    ax.set_xlabel("iterate")
    ax.set_ylabel("h(x)")
    ax.set_ylim(0, 1)
    ax.set_title("dense orbit witness")
    return _save(fig, path)
