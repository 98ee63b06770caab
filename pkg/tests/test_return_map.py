import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hybrid_centers import (
    BoundaryPoint,
    LinearCenter,
    ResetPolynomial,
    build_partition,
    eval_return,
    return_derivative,
    logistic_example_system,
    transversal_intervals,
)
from hybrid_centers.cycles import affine_branch_constants
from hybrid_centers.polynomial import Poly
from hybrid_centers.return_map import (
    EQUILIBRIUM_ON_SIGMA,
    INVISIBLE,
    VISIBLE,
    branch_polynomials,
    branch_value,
    check_coverage,
    locate,
)

from _systems import random_system, symmetric_pair

INF = math.inf


def test_degree_two_example_partition_and_values():
    s = logistic_example_system()
    part = build_partition(s)
    assert part.domain(1) == ((0.0, 1.0),)
    assert part.domain(2) == ((1.0, INF),)
    assert part.domain(3) == ((-1.0, 0.0),)
    assert part.domain(4) == ((-INF, -1.0),)
    assert part.boundary_points == (-1.0, 0.0, 1.0)
    assert eval_return(s, part, 0.5) == (0.0, 1)
    assert eval_return(s, part, 0.75) == (0.75, 1)
    assert return_derivative(s, part, 0.3) == pytest.approx(16 - 160 * 0.3 + 384 * 0.09 - 256 * 0.027)


def test_boundary_point_carries_adjacent_values():
    s = logistic_example_system()
    part = build_partition(s)
    with pytest.raises(BoundaryPoint) as info:
        eval_return(s, part, 1.0)
    assert info.value.values == {1: 0.0, 2: 0.0}


def test_branch_polynomials_of_degree_two_example():
    polys = branch_polynomials(logistic_example_system())
    phi = Poly((0, -4, -4))
    neg = Poly((0, -1))
    assert polys[1] == phi.compose(neg.compose(phi.compose(neg)))
    assert polys[2] == phi.compose(phi.compose(neg))
    assert polys[3] == phi.compose(neg.compose(phi))
    assert polys[4] == phi.compose(phi)


@pytest.mark.parametrize("delta,side,entering", [
    (1, 1, (2.0, INF)), (-1, 1, (-INF, 2.0)), (1, 2, (-INF, 2.0)), (-1, 2, (2.0, INF)),
])
def test_transversal_intervals_orientation(delta, side, entering):
    # k = 1 and eta = 2*d*delta, so d = 2*delta puts the fold at y = 2
    c = LinearCenter(0, 1, delta, 1, 2 * delta)
    t = transversal_intervals(c, side)
    assert t.fold == 2.0
    assert t.entering == (entering,)


def test_fold_kinds():
    assert transversal_intervals(LinearCenter(0, 1, 1, 0, 0), 1).fold_kind == EQUILIBRIUM_ON_SIGMA
    vis = transversal_intervals(LinearCenter(0, 1, 1, 1, 2), 1)
    assert vis.fold_kind == VISIBLE and vis.enters(vis.fold)
    inv = transversal_intervals(LinearCenter(0, 1, 1, 1, 2), 2)
    assert inv.fold_kind == INVISIBLE and not inv.enters(inv.fold)


@given(st.fractions(-3, 3, max_denominator=8).filter(lambda a: a != 0),
       st.fractions(-3, 3, max_denominator=8),
       st.fractions(-3, 3, max_denominator=8), st.fractions(-3, 3, max_denominator=8))
def test_affine_branch_constants_match_composition(a, b, d1, d2):
    s = symmetric_pair(ResetPolynomial.affine(a, b), d1, d2)
    polys = branch_polynomials(s)
    e1, e2 = Fraction(2) * d1, Fraction(-2) * d2
    consts = affine_branch_constants(a, b, e1, e2)
    for j, sign in zip((1, 2, 3, 4), (1, -1, -1, 1)):
        assert polys[j].coeffs[1] == sign * a * a
        assert (polys[j].coeffs[0] if polys[j].coeffs else 0) == consts[j]


@pytest.mark.parametrize("seed", range(40))
def test_partition_covers_line_and_branches_agree(seed):
    rng = random.Random(seed)
    s = random_system(rng, max_degree=4)
    part = build_partition(s)
    assert check_coverage(part)
    assert all(len(part.domain(j)) <= s.degree for j in (1, 2, 3, 4))
    exprs = branch_polynomials(s)
    for _ in range(50):
        y = rng.uniform(-3, 3)
        j = locate(part, y)
        if j is None:
            continue
        exact = exprs[j].evalf(y)
        nested = branch_value(s, j, y)
        assert abs(exact - nested) <= 1e-8 * (1 + abs(exact))
