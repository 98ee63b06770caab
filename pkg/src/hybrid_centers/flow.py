"""Closed-form dynamics of a single normal-form center.

The coefficient matrix ``M`` has zero trace and determinant
``3 b^2 + omega^2``, so ``M^2 = -Omega^2 I`` and the flow about the
equilibrium ``e`` is

    u(t) = cos(Omega t) u0 + sin(Omega t) / Omega * M u0,   u = p - e.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import (
    PlanePoint,
    equilibrium,
    equilibrium_on_sigma,
    eta,
    first_integral,
    tangency_point,
    vector_field_eval,
)
from .errors import SideMismatch

__all__ = [
    "FlowArc",
    "flow",
    "sigma_chord",
    "ellipse_sigma_intersections",
    "time_of_flight",
    "time_to_sigma",
    "sample_arc",
    "DEFAULT_ARC_SAMPLES",
]

DEFAULT_ARC_SAMPLES = 64


@dataclass(frozen=True)
class FlowArc:
    center_side: int
    start: PlanePoint
    end: PlanePoint
    duration: float
    samples: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError("arc duration must be nonnegative")


def flow(center, p, t):
    e = equilibrium(center)
    ux, uy = p.x - e.x, p.y - e.y
    (m11, m12), (m21, m22) = center.matrix()
    w = center.frequency
    ct, st = math.cos(w * t), math.sin(w * t) / w
    return PlanePoint(e.x + ct * ux + st * (m11 * ux + m12 * uy),
                      e.y + ct * uy + st * (m21 * ux + m22 * uy))


def sigma_chord(center, y):
    """Second intersection with ``x = 0`` of the orbit ellipse through ``(0, y)``."""
    return eta(center) - y


def ellipse_sigma_intersections(center, p):
    """Sorted y-values where the level ellipse through ``p`` meets the switching line.

    Returns a tuple of length 0 (ellipse misses the line), 1 (tangency) or 2.
    """
    h = first_integral(center, p)
    qa = center.delta * float(center.k)
    qb = -2.0 * float(center.d)
    disc = qb * qb + 4.0 * qa * h
    scale = qb * qb + abs(4.0 * qa * h)
    if disc < -1e-14 * scale:
        return ()
    if disc <= 1e-14 * scale:
        return (-qb / (2 * qa),)
    sq = math.sqrt(disc)
    # numerically stable pair
    q = -0.5 * (qb + math.copysign(sq, qb))
    r1 = q / qa
    r2 = -h / q if q != 0 else -r1
    return tuple(sorted((r1, r2)))


def _fold_visible(center, side):
    """Visible when the orbit tangent at the fold curves into ``side``."""
    fold = tangency_point(center)
    q = vector_field_eval(center, PlanePoint(0.0, fold)).y
    xdd = -center.delta * float(center.k) * q
    return xdd < 0 if side == 1 else xdd > 0


def time_of_flight(center, y_from, side):
    """Time to travel from ``(0, y_from)`` through ``side`` back to the switching line.

    Raises :class:`SideMismatch` when the field at the start points away
    from ``side``.  At the fold the answer is a full period for a visible
    fold and zero when the fold is the equilibrium itself.
    """
    if side not in (1, 2):
        raise ValueError(f"side must be 1 or 2, got {side!r}")
    v = vector_field_eval(center, PlanePoint(0.0, y_from)).x
    if v == 0:
        if equilibrium_on_sigma(center):
            return 0.0
        if not _fold_visible(center, side):
            raise SideMismatch(f"invisible fold at y={y_from!r} for side {side}")
        return center.period
    if (side == 1 and v > 0) or (side == 2 and v < 0):
        raise SideMismatch(f"field at y={y_from!r} leaves side {side}")
    e = equilibrium(center)
    w = center.frequency
    half = math.atan2(-v, w * e.x)
    if half <= 0:
        half += math.pi
    return 2 * half / w


def time_to_sigma(center, p):
    """First positive time at which the orbit through ``p`` reaches ``x = 0``.

    Returns ``None`` when the orbit ellipse never meets the switching line.
    """
    if not ellipse_sigma_intersections(center, p):
        return None
    e = equilibrium(center)
    ux, uy = p.x - e.x, p.y - e.y
    (m11, m12), _ = center.matrix()
    w = center.frequency
    a_cos = ux
    a_sin = (m11 * ux + m12 * uy) / w
    amp = math.hypot(a_cos, a_sin)
    if amp == 0:
        return None
    ratio = max(-1.0, min(1.0, -e.x / amp))
    phase = math.atan2(a_sin, a_cos)
    spread = math.acos(ratio)
    best = None
    for cand in (phase + spread, phase - spread):
        theta = cand % (2 * math.pi)
        if theta <= 1e-15:
            theta += 2 * math.pi
        if best is None or theta < best:
            best = theta
    return best / w


def sample_arc(center, p, duration, n=DEFAULT_ARC_SAMPLES):
    if n <= 1:
        return (p,)
    return tuple(flow(center, p, duration * i / (n - 1)) for i in range(n))
