"""Global orbits of the hybrid system: flow arcs, jumps, entry attempts.

States on the switching line come in two phases.  An *attempt* state
``(y, side)`` tries to enter ``side`` with that side's field; an *arrived*
state has just reached the line through ``side`` and must jump.  Entry is
decided by the sign of x' at the point, independently of the branch
partition, which makes :func:`first_return_numeric` an oracle for the
closed-form return map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .config import default_tol
from .core import PlanePoint, equilibrium_on_sigma, first_integral, vector_field_eval
from .errors import BoundaryPoint, EquilibriumReached
from .flow import (
    DEFAULT_ARC_SAMPLES,
    FlowArc,
    flow,
    sample_arc,
    time_of_flight,
    time_to_sigma,
)

__all__ = [
    "SigmaState",
    "ArcEvent",
    "JumpEvent",
    "StopEvent",
    "OrbitTrace",
    "entry_test",
    "step",
    "global_orbit",
    "first_return_numeric",
    "validate_trace",
]

ATTEMPT = "attempt"
ARRIVED = "arrived"

CONFINEMENT_TOL = 1e-12


@dataclass(frozen=True)
class SigmaState:
    y: float
    side: int
    phase: str = ATTEMPT


@dataclass(frozen=True)
class ArcEvent:
    index: int
    arc: FlowArc
    t_start: float = 0.0
    kind = "arc"


@dataclass(frozen=True)
class JumpEvent:
    index: int
    from_y: float
    to_y: float
    t_start: float = 0.0
    kind = "jump"


@dataclass(frozen=True)
class StopEvent:
    index: int
    reason: str
    point: PlanePoint
    t_start: float = 0.0
    kind = "stop"


@dataclass(frozen=True)
class OrbitTrace:
    initial: PlanePoint
    events: tuple
    total_time: float
    terminated: str
    which: int = 1
    final_state: SigmaState = field(default=None)
    reference_state: SigmaState = field(default=None)

    @property
    def arcs(self):
        return [e for e in self.events if e.kind == "arc"]

    @property
    def jumps(self):
        return [e for e in self.events if e.kind == "jump"]


def entry_test(center, side, y):
    """``'enter'``, ``'refuse'`` or ``'equilibrium'`` for an attempt at ``(0, y)``."""
    v = vector_field_eval(center, PlanePoint(0.0, y)).x
    if v < 0:
        return "enter" if side == 1 else "refuse"
    if v > 0:
        return "enter" if side == 2 else "refuse"
    if equilibrium_on_sigma(center):
        return "equilibrium"
    q = vector_field_eval(center, PlanePoint(0.0, y)).y
    xdd = -center.delta * float(center.k) * q
    visible = xdd < 0 if side == 1 else xdd > 0
    return "enter" if visible else "refuse"


def _on_fold(center, y):
    return vector_field_eval(center, PlanePoint(0.0, y)).x == 0


def step(system, state, index=0, t_start=0.0, samples=0):
    """Advance one event from ``state``; returns ``(event, next_state)``."""
    if state.phase == ARRIVED:
        to_y = system.reset(state.y)
        event = JumpEvent(index, state.y, to_y, t_start)
        return event, SigmaState(to_y, 3 - state.side, ATTEMPT)
    center = system.center(state.side)
    verdict = entry_test(center, state.side, state.y)
    if verdict == "equilibrium":
        raise EquilibriumReached(state.y, state.side)
    if verdict == "refuse":
        to_y = system.reset(state.y)
        event = JumpEvent(index, state.y, to_y, t_start)
        return event, SigmaState(to_y, 3 - state.side, ATTEMPT)
    start = PlanePoint(0.0, state.y)
    duration = time_of_flight(center, state.y, state.side)
    end_y = flow(center, start, duration).y
    pts = sample_arc(center, start, duration, samples) if samples else ()
    arc = FlowArc(state.side, start, PlanePoint(0.0, end_y), duration, pts)
    return ArcEvent(index, arc, t_start), SigmaState(end_y, state.side, ARRIVED)


def _same(a, b, tol):
    return abs(a - b) <= tol * (1.0 + abs(b))


def global_orbit(system, q, which=1, max_events=1000, max_time=math.inf,
                 samples=DEFAULT_ARC_SAMPLES, escape_radius=1e12, tol=None):
    """Build the orbit through ``q``; ``which`` picks the side tried first when ``q`` is on the line."""
    if which not in (1, 2):
        raise ValueError(f"which must be 1 or 2, got {which!r}")
    if max_events < 1:
        raise ValueError("max_events must be positive")
    tol = default_tol() if tol is None else tol
    events = []
    total = 0.0

    def finish(reason, state, ref):
        return OrbitTrace(q, tuple(events), total, reason, which, state, ref)

    if q.x != 0:
        side = 1 if q.x < 0 else 2
        center = system.center(side)
        t_hit = time_to_sigma(center, q)
        if t_hit is None:
            period = center.period
            pts = sample_arc(center, q, period, samples) if samples else ()
            events.append(ArcEvent(0, FlowArc(side, q, q, period, pts), 0.0))
            total = period
            return finish("closed", None, None)
        end_y = flow(center, q, t_hit).y
        pts = sample_arc(center, q, t_hit, samples) if samples else ()
        events.append(ArcEvent(0, FlowArc(side, q, PlanePoint(0.0, end_y), t_hit, pts), 0.0))
        total = t_hit
        state = SigmaState(end_y, side, ARRIVED)
        reference = None
    else:
        state = SigmaState(q.y, which, ATTEMPT)
        reference = state

    jump_only = []
    while True:
        if not math.isfinite(state.y) or abs(state.y) > escape_radius:
            events.append(StopEvent(len(events), "escape", PlanePoint(0.0, state.y) if math.isfinite(state.y) else q, total))
            return finish("escape", state, reference)
        if state.phase == ATTEMPT:
            if reference is None:
                reference = state
            elif events and state.side == reference.side and _same(state.y, reference.y, tol) \
                    and any(e.kind == "arc" for e in events[1 if q.x != 0 else 0:]):
                return finish("closed", state, reference)
            for prev in jump_only:
                if prev.side == state.side and abs(prev.y - state.y) <= CONFINEMENT_TOL:
                    return finish("sigma_confined", state, reference)
            jump_only.append(state)
        if len(events) >= max_events or total >= max_time:
            return finish("budget", state, reference)
        try:
            event, nxt = step(system, state, len(events), total, samples)
        except EquilibriumReached:
            events.append(StopEvent(len(events), "equilibrium", PlanePoint(0.0, state.y), total))
            return finish("equilibrium", state, reference)
        events.append(event)
        if event.kind == "arc":
            total += event.arc.duration
            jump_only = []
        state = nxt


def first_return_numeric(system, y, partition=None):
    """One return from an attempt on side 1 at ``y``, built from arcs and jumps.

    Returns ``(y_next, branch_id)`` where the branch id encodes which sides
    were entered (1: both, 2: side 1 only, 3: side 2 only, 4: neither).
    """
    if partition is not None and y in partition.boundary_points:
        raise BoundaryPoint(y)
    state = SigmaState(y, 1, ATTEMPT)
    entered = []
    index = 0
    while len(entered) < 2:
        center = system.center(state.side)
        if _on_fold(center, state.y):
            raise BoundaryPoint(y)
        event, state = step(system, state, index)
        index += 1
        if event.kind == "arc":
            entered.append(True)
            _, state = step(system, state, index)
            index += 1
        else:
            entered.append(False)
    branch = {(True, True): 1, (True, False): 2, (False, True): 3, (False, False): 4}[tuple(entered)]
    return state.y, branch


def validate_trace(trace):
    """List of chain-compatibility violations (empty when the trace is consistent)."""
    problems = []
    events = trace.events
    for prev, cur in zip(events, events[1:]):
        if prev.kind == "arc":
            if cur.kind == "arc":
                problems.append(f"event {cur.index}: two consecutive arcs")
            elif cur.kind == "jump" and cur.from_y != prev.arc.end.y:
                problems.append(f"event {cur.index}: jump starts at {cur.from_y}, arc ended at {prev.arc.end.y}")
        elif prev.kind == "jump":
            if cur.kind == "arc" and (cur.arc.start.y != prev.to_y or cur.arc.start.x != 0):
                problems.append(f"event {cur.index}: arc starts off the jump target")
            elif cur.kind == "jump" and cur.from_y != prev.to_y:
                problems.append(f"event {cur.index}: failed entry does not chain")
        elif prev.kind == "stop":
            problems.append(f"event {cur.index}: event after stop")
    durations = sum(e.arc.duration for e in events if e.kind == "arc")
    if abs(durations - trace.total_time) > 1e-12 * (1.0 + durations):
        problems.append("total_time differs from the sum of arc durations")
    if trace.terminated == "closed" and trace.final_state is not None and trace.reference_state is not None:
        ref, fin = trace.reference_state, trace.final_state
        if ref.side != fin.side or abs(ref.y - fin.y) > 1e-9 * (1.0 + abs(ref.y)):
            problems.append("closed trace does not return to its reference state")
    return problems


def arc_energy_drift(system, arc):
    center = system.center(arc.center_side)
    h0 = first_integral(center, arc.start)
    h1 = first_integral(center, arc.end)
    return abs(h1 - h0) / (1.0 + abs(h0))
