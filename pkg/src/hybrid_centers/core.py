"""Normal-form linear centers, polynomial resets and the hybrid system triple.

A center is described by the five numbers ``(b, omega, delta, c, d)`` of the
normal form

    x' = -b x - delta (4 b^2 + omega^2) y + d
    y' =  delta x + b y + c

Parameters are kept exactly as given (int, float or Fraction) so that the
return-map construction can work in rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from numbers import Real

from .errors import InvalidSystem
from .polynomial import Poly

__all__ = [
    "PlanePoint",
    "LinearCenter",
    "ResetPolynomial",
    "HybridSystem",
    "vector_field_eval",
    "first_integral",
    "first_integral_gradient",
    "eta",
    "tangency_point",
    "equilibrium",
    "equilibrium_on_sigma",
    "logistic_example_system",
]


def _check_real(name, value):
    if isinstance(value, bool) or not isinstance(value, Real):
        raise InvalidSystem(f"{name} must be a real number, got {value!r}")
    if not math.isfinite(float(value)):
        raise InvalidSystem(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class PlanePoint:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x!r}, {self.y!r})")

    def __iter__(self):
        yield self.x
        yield self.y

    def norm(self):
        return math.hypot(self.x, self.y)


@dataclass(frozen=True)
class LinearCenter:
    b: Real
    omega: Real
    delta: int
    c: Real = 0
    d: Real = 0

    def __post_init__(self):
        for name in ("b", "omega", "c", "d"):
            _check_real(name, getattr(self, name))
        if self.omega == 0:
            raise InvalidSystem("omega must be nonzero")
        if self.delta not in (-1, 1) or isinstance(self.delta, bool):
            raise InvalidSystem(f"delta must be -1 or +1, got {self.delta!r}")
        object.__setattr__(self, "delta", int(self.delta))

    @property
    def k(self):
        """The coefficient ``4 b^2 + omega^2`` multiplying ``delta*y`` in x'."""
        return 4 * self.b**2 + self.omega**2

    @property
    def k_exact(self):
        return 4 * Fraction(self.b) ** 2 + Fraction(self.omega) ** 2

    @property
    def frequency(self):
        """Angular frequency ``sqrt(3 b^2 + omega^2)`` of every orbit."""
        return math.sqrt(3 * float(self.b) ** 2 + float(self.omega) ** 2)

    @property
    def period(self):
        return 2 * math.pi / self.frequency

    def matrix(self):
        b = float(self.b)
        return ((-b, -self.delta * float(self.k)), (float(self.delta), b))

    def exact(self, name):
        return Fraction(getattr(self, name))

    def to_dict(self):
        return {"b": self.b, "omega": self.omega, "delta": self.delta, "c": self.c, "d": self.d}

    @classmethod
    def from_dict(cls, data):
        return cls(data["b"], data["omega"], data["delta"], data.get("c", 0), data.get("d", 0))


@dataclass(frozen=True)
class ResetPolynomial:
    """Reset map on the switching line; ``coeffs[k]`` multiplies ``y**k``."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        for i, c in enumerate(coeffs):
            _check_real(f"coeffs[{i}]", c)
        if len(coeffs) < 2:
            raise InvalidSystem("reset polynomial must have degree >= 1")
        if coeffs[-1] == 0:
            raise InvalidSystem("leading coefficient of the reset must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def affine(cls, a, b):
        """The degree-one reset ``y -> a*y + b``."""
        return cls((b, a))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @cached_property
    def poly(self):
        return Poly(self.coeffs)

    @cached_property
    def _rev(self):
        return tuple(float(c) for c in reversed(self.coeffs))

    @cached_property
    def _drev(self):
        return tuple(k * float(self.coeffs[k]) for k in range(len(self.coeffs) - 1, 0, -1))

    def __call__(self, y):
        acc = 0.0
        for c in self._rev:
            acc = acc * y + c
        return acc

    def derivative(self, y):
        acc = 0.0
        for c in self._drev:
            acc = acc * y + c
        return acc

    @property
    def a(self):
        """Slope at zero (the ``a`` of an affine reset)."""
        return self.coeffs[1]

    @property
    def b(self):
        """Value at zero (the ``b`` of an affine reset)."""
        return self.coeffs[0]

    def to_dict(self):
        return {"coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class HybridSystem:
    """Center on ``x < 0`` (side 1), center on ``x > 0`` (side 2), and the reset."""

    center1: LinearCenter
    center2: LinearCenter
    reset: ResetPolynomial

    def __post_init__(self):
        for name, typ in (("center1", LinearCenter), ("center2", LinearCenter),
                          ("reset", ResetPolynomial)):
            if not isinstance(getattr(self, name), typ):
                raise InvalidSystem(f"{name} must be a {typ.__name__}")

    def center(self, side):
        if side == 1:
            return self.center1
        if side == 2:
            return self.center2
        raise ValueError(f"side must be 1 or 2, got {side!r}")

    @property
    def degree(self):
        return self.reset.degree

    @cached_property
    def etas(self):
        """Float chord constants of side 1 and side 2."""
        return eta(self.center1), eta(self.center2)

    def to_dict(self):
        return {
            "center1": self.center1.to_dict(),
            "center2": self.center2.to_dict(),
            "reset": self.reset.to_dict(),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            LinearCenter.from_dict(data["center1"]),
            LinearCenter.from_dict(data["center2"]),
            ResetPolynomial(tuple(data["reset"]["coeffs"])),
        )


def vector_field_eval(center, p):
    x, y = float(p.x), float(p.y)
    b, delta = float(center.b), center.delta
    k = float(center.k)
    return PlanePoint(-b * x - delta * k * y + float(center.d), delta * x + b * y + float(center.c))


def first_integral(center, p):
    x, y = float(p.x), float(p.y)
    b, delta = float(center.b), center.delta
    k = float(center.k)
    c, d = float(center.c), float(center.d)
    return 2 * c * x - 2 * d * y + delta * x * x + 2 * b * x * y + delta * k * y * y


def first_integral_gradient(center, p):
    x, y = float(p.x), float(p.y)
    b, delta = float(center.b), center.delta
    k = float(center.k)
    return PlanePoint(2 * float(center.c) + 2 * delta * x + 2 * b * y,
                      -2 * float(center.d) + 2 * b * x + 2 * delta * k * y)


def eta(center, exact=False):
    """Sum of the two Sigma-intersections of any orbit ellipse: ``2 d delta / k``."""
    value = Fraction(2 * center.delta) * Fraction(center.d) / center.k_exact
    return value if exact else float(value)


def tangency_point(center, exact=False):
    """The fold: the y on the switching line where x' vanishes."""
    value = eta(center, exact=True) / 2
    return value if exact else float(value)


def equilibrium(center):
    b, delta = float(center.b), center.delta
    k = float(center.k)
    c, d = float(center.c), float(center.d)
    det = 3 * b * b + float(center.omega) ** 2
    return PlanePoint(-(b * d + delta * k * c) / det, (delta * d + b * c) / det)


def equilibrium_on_sigma(center):
    """True when the equilibrium sits on ``x = 0`` (decided exactly)."""
    b, c, d = Fraction(center.b), Fraction(center.c), Fraction(center.d)
    return b * d + center.delta * center.k_exact * c == 0


def logistic_example_system():
    """The chaotic member of the degree-two family: rotation, its reverse, ``-4y(1+y)``."""
    x1 = LinearCenter(0, 1, 1, 0, 0)
    x2 = LinearCenter(0, 1, -1, 0, 0)
    return HybridSystem(x1, x2, ResetPolynomial((0, -4, -4)))
