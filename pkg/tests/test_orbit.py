import math
import random

import pytest

from hybrid_centers import (
    BoundaryPoint,
    LinearCenter,
    PlanePoint,
    ResetPolynomial,
    build_partition,
    eval_return,
    find_cycles,
    first_return_numeric,
    global_orbit,
    step,
    logistic_example_system,
    validate_trace,
)
from hybrid_centers import HybridSystem
from hybrid_centers.orbit import ArcEvent, JumpEvent, OrbitTrace, SigmaState, arc_energy_drift

from _systems import random_affine_system, random_system


def test_step_examples():
    s = logistic_example_system()
    ev, nxt = step(s, SigmaState(0.7, 1))
    assert ev.kind == "arc"
    assert ev.arc.end.y == pytest.approx(-0.7, abs=1e-15)
    assert ev.arc.duration == pytest.approx(math.pi, abs=1e-15)
    ev, nxt = step(s, SigmaState(-0.5, 1))
    assert ev.kind == "jump" and ev.to_y == 1.0 and nxt == SigmaState(1.0, 2)


def test_fixed_point_gives_closed_trace():
    trace = global_orbit(logistic_example_system(), PlanePoint(0.0, 0.75), which=1)
    kinds = [e.kind for e in trace.events]
    assert kinds == ["arc", "jump", "arc", "jump"]
    assert trace.terminated == "closed"
    assert trace.events[0].arc.end.y == pytest.approx(-0.75)
    assert trace.events[1].to_y == pytest.approx(0.75)
    assert trace.total_time == pytest.approx(2 * math.pi)
    assert validate_trace(trace) == []


def test_ellipse_missing_the_line():
    s = HybridSystem(LinearCenter(0, 1, 1, 3, 0), LinearCenter(0, 1, -1), ResetPolynomial((0, 1)))
    trace = global_orbit(s, PlanePoint(-3.5, 0.0))
    assert trace.terminated == "closed"
    assert len(trace.events) == 1 and trace.events[0].kind == "arc"
    assert trace.total_time == pytest.approx(s.center1.period)


def test_sigma_confinement_detected():
    c = LinearCenter(0, 1, -1)
    s = HybridSystem(c, c, ResetPolynomial((0, -1)))
    trace = global_orbit(s, PlanePoint(0.0, 2.0))
    assert trace.terminated == "sigma_confined"
    assert all(e.kind == "jump" for e in trace.events)


def test_unbounded_jumps_are_budget_not_confinement():
    s = HybridSystem(LinearCenter(0, 1, -1), LinearCenter(0, 1, 1), ResetPolynomial((1, 1)))
    trace = global_orbit(s, PlanePoint(0.0, 2.0), max_events=50)
    assert trace.terminated == "budget"
    y, j = first_return_numeric(s, 2.0)
    assert (y, j) == (4.0, 4)


def test_equilibrium_on_the_line_stops():
    trace = global_orbit(logistic_example_system(), PlanePoint(0.0, 0.0))
    assert trace.terminated == "equilibrium"
    assert trace.events[-1].kind == "stop"


def test_escape_terminates():
    s = HybridSystem(LinearCenter(0, 1, -1), LinearCenter(0, 1, 1), ResetPolynomial((0, 0, 3)))
    trace = global_orbit(s, PlanePoint(0.0, 2.0), max_events=1000)
    assert trace.terminated == "escape"


def test_time_budget():
    trace = global_orbit(logistic_example_system(), PlanePoint(0.0, 0.3), max_time=10.0)
    assert trace.terminated == "budget" and trace.total_time >= 10.0


def test_which_selects_the_first_side():
    s = logistic_example_system()
    t1 = global_orbit(s, PlanePoint(0.0, -0.5), which=1, max_events=3, samples=0)
    t2 = global_orbit(s, PlanePoint(0.0, -0.5), which=2, max_events=3, samples=0)
    # both sides refuse at -0.5, so each start jumps and then arcs on the other side
    assert t1.events[0].kind == "jump" and t1.events[1].arc.center_side == 2
    assert t2.events[0].kind == "jump" and t2.events[1].arc.center_side == 1
    t3 = global_orbit(s, PlanePoint(0.0, 0.5), which=2, max_events=1, samples=0)
    assert t3.events[0].arc.center_side == 2


def test_first_return_examples():
    s = logistic_example_system()
    assert first_return_numeric(s, 0.5) == (0.0, 1)
    part = build_partition(s)
    with pytest.raises(BoundaryPoint):
        first_return_numeric(s, 0.0)
    with pytest.raises(BoundaryPoint):
        first_return_numeric(s, 1.0, part)


def test_validator_flags_broken_chain():
    good = global_orbit(logistic_example_system(), PlanePoint(0.0, 0.3), max_events=6, samples=0)
    events = list(good.events)
    events[1] = JumpEvent(1, events[1].from_y + 1.0, events[1].to_y)
    bad = OrbitTrace(good.initial, tuple(events), good.total_time, good.terminated)
    assert validate_trace(bad)
    assert validate_trace(OrbitTrace(good.initial, good.events, good.total_time + 1, "budget"))


@pytest.mark.parametrize("seed", range(30))
def test_random_traces_are_valid_and_conserve_energy(seed):
    rng = random.Random(seed)
    s = random_system(rng)
    q = PlanePoint(rng.choice((0.0, rng.uniform(-2, 2))), rng.uniform(-2, 2))
    trace = global_orbit(s, q, which=rng.choice((1, 2)), max_events=80, samples=0)
    assert validate_trace(trace) == []
    for e in trace.events:
        if e.kind == "arc":
            assert arc_energy_drift(s, e.arc) < 1e-9 * (1 + s.center(e.arc.center_side).k)


def _cycles_close(s, cycles):
    for c in cycles:
        trace = global_orbit(s, PlanePoint(0.0, c.points[0]), which=1,
                             max_events=4 * c.period, samples=0)
        if c.boundary_adjacent and trace.terminated == "equilibrium":
            continue
        if set(c.itinerary) == {4}:
            assert trace.terminated == "sigma_confined"
        else:
            assert trace.terminated == "closed", (c, trace.terminated)


def test_cycles_of_degree_two_example_close():
    s = logistic_example_system()
    _cycles_close(s, find_cycles(s, max_period=2))


@pytest.mark.parametrize("seed", range(20))
def test_cycles_of_random_affine_systems_close(seed):
    s = random_affine_system(random.Random(seed))
    _cycles_close(s, find_cycles(s, max_period=2))


@pytest.mark.parametrize("seed", range(20))
def test_oracle_matches_closed_form(seed):
    rng = random.Random(100 + seed)
    s = random_system(rng)
    part = build_partition(s)
    for _ in range(100):
        y = rng.uniform(-2, 2)
        if min((abs(y - b) for b in part.boundary_points), default=1) < 1e-6:
            continue
        v, j = eval_return(s, part, y)
        w, k = first_return_numeric(s, y)
        assert j == k and abs(v - w) <= 1e-7
