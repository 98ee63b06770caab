from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hybrid_centers import (
    HybridSystem,
    InvalidSystem,
    LinearCenter,
    PlanePoint,
    ResetPolynomial,
    equilibrium,
    eta,
    first_integral,
    tangency_point,
    logistic_example_system,
    vector_field_eval,
)
from hybrid_centers.core import equilibrium_on_sigma, first_integral_gradient

reals = st.floats(-5, 5, allow_nan=False)
omegas = st.floats(0.2, 5)
deltas = st.sampled_from((-1, 1))


@pytest.mark.parametrize("kwargs", [
    dict(b=0, omega=0, delta=1),
    dict(b=0, omega=1, delta=2),
    dict(b=0, omega=1, delta=0),
    dict(b=float("nan"), omega=1, delta=1),
    dict(b=True, omega=1, delta=1),
])
def test_invalid_centers(kwargs):
    with pytest.raises(InvalidSystem):
        LinearCenter(**kwargs)


def test_invalid_resets():
    with pytest.raises(InvalidSystem):
        ResetPolynomial((3,))
    with pytest.raises(InvalidSystem):
        ResetPolynomial((1, 2, 0))
    with pytest.raises(InvalidSystem):
        HybridSystem(LinearCenter(0, 1, 1), "x", ResetPolynomial((0, 1)))


def test_eta_and_fold_exact():
    c = LinearCenter(1, 2, -1, 0, 3)        # k = 8, eta = 2*3*(-1)/8
    assert eta(c, exact=True) == Fraction(-3, 4)
    assert tangency_point(c, exact=True) == Fraction(-3, 8)
    assert vector_field_eval(c, PlanePoint(0.0, -0.375)).x == 0


def test_eta_exact_for_float_parameters():
    c = LinearCenter(0.1, 0.3, 1, 0, 0.7)
    k = 4 * Fraction(0.1) ** 2 + Fraction(0.3) ** 2
    assert eta(c, exact=True) == 2 * Fraction(0.7) / k


def test_logistic_example_shape():
    s = logistic_example_system()
    assert s.degree == 2
    assert s.reset(-0.5) == 1.0
    assert s.etas == (0.0, 0.0)
    assert equilibrium_on_sigma(s.center1) and equilibrium_on_sigma(s.center2)


@given(reals, omegas, deltas, reals, reals)
def test_equilibrium_is_a_zero_of_the_field(b, w, delta, c, d):
    center = LinearCenter(b, w, delta, c, d)
    e = equilibrium(center)
    v = vector_field_eval(center, e)
    scale = 1 + abs(c) + abs(d) + center.k * (abs(e.x) + abs(e.y))
    assert abs(v.x) <= 1e-12 * scale and abs(v.y) <= 1e-12 * scale


@given(reals, omegas, deltas, reals, reals, reals, reals)
def test_first_integral_is_constant_along_the_field(b, w, delta, c, d, x, y):
    center = LinearCenter(b, w, delta, c, d)
    p = PlanePoint(x, y)
    g = first_integral_gradient(center, p)
    v = vector_field_eval(center, p)
    scale = (abs(g.x) + abs(g.y)) * (abs(v.x) + abs(v.y)) + 1
    assert abs(g.x * v.x + g.y * v.y) <= 1e-12 * scale


def test_first_integral_value():
    c = LinearCenter(1, 1, 1, 2, 3)        # k = 5
    assert first_integral(c, PlanePoint(1.0, 1.0)) == 2 * 2 - 2 * 3 + 1 + 2 + 5


def test_round_trip_dict():
    s = logistic_example_system()
    assert HybridSystem.from_dict(s.to_dict()) == s
