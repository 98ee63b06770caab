import math
import random
import warnings
from fractions import Fraction

import pytest

from hybrid_centers import HybridSystem, LinearCenter, ResetPolynomial, build_partition, eval_return, logistic_example_system
from hybrid_centers.cycles import (
    CONTINUUM,
    HAS_CYCLE,
    NO_REGULAR,
    NONHYPERBOLIC,
    STABLE,
    UNSTABLE,
    LimitCycle,
    affine_regular_cycle,
    classify,
    displacement,
    find_cycles,
)
from hybrid_centers.errors import BoundaryPoint, DegreeOverflow, WrongDegree
from hybrid_centers.return_map import branch_value

from _systems import affine_example, random_affine_system, random_system, symmetric_pair


def _affine(a, b, d2):
    return HybridSystem(LinearCenter(0, 1, -1, 0, 0), LinearCenter(0, 1, -1, 0, Fraction(d2)),
                        ResetPolynomial.affine(Fraction(a), Fraction(b)))


def test_affine_example_with_shifted_second_center():
    rep = affine_regular_cycle(_affine(2, 1, Fraction(-1, 2)))
    assert rep.beta1 == 1
    assert rep.y_star == Fraction(-1, 3)


def test_affine_contracting_example():
    rep = affine_regular_cycle(affine_example(Fraction(1, 2), 1))
    assert rep.beta1 == Fraction(1, 2)
    assert rep.y_star == Fraction(2, 3)
    assert rep.status == HAS_CYCLE
    assert rep.cycle.classification == STABLE
    assert rep.cycle.multiplier == pytest.approx(0.25)


def test_affine_neutral_cases():
    assert affine_regular_cycle(affine_example(1, 0)).status == CONTINUUM
    assert affine_regular_cycle(affine_example(1, 1)).status == CONTINUUM
    assert affine_regular_cycle(symmetric_pair(ResetPolynomial.affine(1, 1), 0, 1)).status == NO_REGULAR
    assert affine_regular_cycle(affine_example(-1, 1)).status == NO_REGULAR
    assert affine_regular_cycle(affine_example(-1, 0)).status == CONTINUUM
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        find_cycles(affine_example(1, 0), max_period=1)
    assert any("continuum" in str(w.message) for w in caught)


def test_affine_rejects_other_degrees():
    with pytest.raises(WrongDegree):
        affine_regular_cycle(logistic_example_system())


def _bisect_fixed_points(system, part, lo, hi, n=20000):
    roots = []
    prev_y, prev_d = None, None
    for i in range(n + 1):
        y = lo + (hi - lo) * i / n
        try:
            d = displacement(system, part, y)
        except BoundaryPoint:
            prev_y = None
            continue
        if prev_y is not None and prev_d * d < 0:
            a, b, fa = prev_y, y, prev_d
            for _ in range(100):
                m = (a + b) / 2
                fm = displacement(system, part, m)
                if fa * fm <= 0:
                    b = m
                else:
                    a, fa = m, fm
            roots.append((a + b) / 2)
        elif d == 0:
            roots.append(y)
        prev_y, prev_d = y, d
    return roots


def test_degree_two_fixed_points_against_bisection():
    s = logistic_example_system()
    part = build_partition(s)
    cycles = find_cycles(s, part, max_period=1)
    pts = sorted(c.points[0] for c in cycles)
    want = [-1.25, 0.0, (5 - math.sqrt(5)) / 8, 0.75, (5 + math.sqrt(5)) / 8]
    assert pts == pytest.approx(want, abs=1e-10)
    oracle = _bisect_fixed_points(s, part, -3.0, 3.0)
    for r in oracle:
        assert min(abs(r - p) for p in pts) < 1e-8
    by_pt = {round(c.points[0], 9): c for c in cycles}
    assert by_pt[0.75].classification == UNSTABLE and by_pt[0.75].multiplier == pytest.approx(4.0)
    assert by_pt[round((5 - math.sqrt(5)) / 8, 9)].multiplier == pytest.approx(-4.0)
    assert by_pt[round((5 - math.sqrt(5)) / 8, 9)].classification == UNSTABLE
    assert by_pt[-1.25].itinerary == (4,) and not by_pt[-1.25].regular
    assert by_pt[0.0].boundary_adjacent
    assert displacement(s, part, 0.75) == 0.0


def test_regular_only_filter():
    cycles = find_cycles(logistic_example_system(), max_period=2, regular_only=True)
    assert cycles and all(c.regular for c in cycles)
    assert any(c.period == 2 for c in cycles)


def test_classify():
    mk = lambda m: LimitCycle(1, (0.0,), (1,), True, m, "")
    assert classify(mk(0.5)) == STABLE
    assert classify(mk(-0.5)) == STABLE
    assert classify(mk(-4.0)) == UNSTABLE
    assert classify(mk(1.0 + 1e-12)) == NONHYPERBOLIC
    assert classify(mk(-1.0)) == NONHYPERBOLIC


def test_degree_overflow():
    s = symmetric_pair(ResetPolynomial((0, 0, 0, 1)))
    with pytest.raises(DegreeOverflow):
        find_cycles(s, max_period=5, degree_cap=4096)


def _check_cycles(system, cycles):
    part = build_partition(system)
    keys = set()
    for c in cycles:
        assert len(c.points) == c.period == len(c.itinerary)
        for k, (y, j) in enumerate(zip(c.points, c.itinerary)):
            nxt = c.points[(k + 1) % c.period]
            assert abs(branch_value(system, j, y) - nxt) <= 1e-7 * (1 + abs(nxt))
        assert c.points[0] == min(c.points)
        key = tuple(round(p, 6) for p in sorted(c.points))
        assert key not in keys
        keys.add(key)
        if not c.boundary_adjacent:
            for y, j in zip(c.points, c.itinerary):
                assert eval_return(system, part, y)[1] == j


@pytest.mark.parametrize("seed", range(40))
def test_random_cycles_are_consistent(seed):
    rng = random.Random(seed)
    s = random_system(rng, max_degree=3)
    _check_cycles(s, find_cycles(s, max_period=2 if s.degree < 3 else 1))


@pytest.mark.parametrize("seed", range(40))
def test_stable_affine_cycle_attracts(seed):
    rng = random.Random(500 + seed)
    s = random_affine_system(rng, (0.1, 0.9))
    part = build_partition(s)
    rep = affine_regular_cycle(s, part)
    if rep.cycle is None:
        return
    y_star = rep.cycle.points[0]
    y = y_star + 1e-3
    if eval_return(s, part, y)[1] != 1:
        return
    for _ in range(400):
        y = eval_return(s, part, y)[0]
    assert abs(y - y_star) < 1e-9
