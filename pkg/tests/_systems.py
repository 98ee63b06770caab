"""Random system generators shared by the property and acceptance tests."""

from fractions import Fraction

from hybrid_centers import HybridSystem, LinearCenter, ResetPolynomial


def random_center(rng, span=5.0, omega=(0.2, 5.0)):
    return LinearCenter(rng.uniform(-span, span), rng.uniform(*omega), rng.choice((-1, 1)),
                        rng.uniform(-span, span), rng.uniform(-span, span))


def random_system(rng, degree=None, max_degree=3, span=5.0):
    n = degree if degree is not None else rng.randint(1, max_degree)
    coeffs = [rng.uniform(-span, span) for _ in range(n + 1)]
    while abs(coeffs[-1]) < 1e-3:
        coeffs[-1] = rng.uniform(-span, span)
    return HybridSystem(random_center(rng, span), random_center(rng, span), ResetPolynomial(tuple(coeffs)))


def random_affine_system(rng, a_range=(0.1, 3.0), span=5.0):
    a = 1.0
    while a == 1.0:
        a = rng.uniform(*a_range)
    a *= rng.choice((-1, 1))
    return HybridSystem(random_center(rng, span), random_center(rng, span),
                        ResetPolynomial.affine(a, rng.uniform(-span, span)))


def symmetric_pair(reset, d1=0, d2=0):
    """Rotation on side 1, reverse rotation on side 2, both with b = 0 and omega = 1."""
    return HybridSystem(LinearCenter(0, 1, 1, 0, d1), LinearCenter(0, 1, -1, 0, d2), reset)


def affine_example(a, b):
    return symmetric_pair(ResetPolynomial.affine(Fraction(a), Fraction(b)))
