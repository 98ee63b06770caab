"""Trapping and escape bounds on the switching line, and an orbit-fate classifier.

For a degree-one reset every branch is ``+-a^2 y + beta_j``, so iterates
obey ``|P(y)| <= a^2 |y| + beta`` with ``beta = max |beta_j|``.  Contracting
resets therefore keep orbits near ``[-R, R]`` with ``R = beta / (1 - a^2)``,
and expanding ones push every ``|y| > beta / (a^2 - 1)`` outward.  For
higher degree the escape bound is the largest root of ``P_j(y) -+ y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import PlanePoint
from .errors import BoundaryPoint, DegreeOverflow, WrongRegime
from .orbit import global_orbit
from .polynomial import Poly, real_roots
from .return_map import branch_polynomials, build_partition, eval_return, locate

__all__ = [
    "FateReport",
    "ESCAPE",
    "TRAPPED",
    "CONVERGED",
    "SIGMA_CONFINED",
    "UNDETERMINED",
    "branch_constants",
    "trapping_radius",
    "escape_threshold",
    "orbit_fate",
]

ESCAPE = "Escape"
TRAPPED = "Trapped"
CONVERGED = "ConvergedToCycle"
SIGMA_CONFINED = "SigmaConfined"
UNDETERMINED = "Undetermined"

WINDOW = 10
CYCLE_TOL = 1e-8
TRAP_SLACK = 1e-6


@dataclass(frozen=True)
class FateReport:
    verdict: str
    bound: float | None
    iterations_used: int
    witness: tuple = ()
    note: str = ""

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "bound": self.bound,
            "iterations": self.iterations_used,
            "witness": list(self.witness),
            "note": self.note,
        }


def _slope_squared(system):
    return Fraction(system.reset.a) ** 2


def branch_constants(system):
    """Exact constant terms ``beta_1..beta_4`` of the branches of a degree-one reset."""
    if system.degree != 1:
        raise WrongRegime("branch constants are defined for degree-one resets")
    return {j: (p.coeffs[0] if p.coeffs else Fraction(0)) for j, p in branch_polynomials(system).items()}


def trapping_radius(system, exact=False):
    """``R = max|beta_j| / (1 - a^2)`` for a contracting degree-one reset."""
    if system.degree != 1:
        raise WrongRegime(f"trapping radius needs degree one, got {system.degree}")
    a2 = _slope_squared(system)
    if a2 >= 1:
        raise WrongRegime("trapping radius needs |a| < 1")
    beta = max(abs(v) for v in branch_constants(system).values())
    r = beta / (1 - a2)
    return r if exact else float(r)


def _verify_escape(exprs, y0, samples=200):
    top = 10 * max(y0, 1.0)
    for i in range(1, samples + 1):
        y = y0 + (top - y0) * i / samples
        for s in (y, -y):
            for p in exprs:
                if not abs(p.evalf(s)) > abs(s):
                    return False
    return True


def escape_threshold(system, exact=False):
    """Bound ``Y0`` beyond which every branch strictly increases ``|y|``."""
    n = system.degree
    if n == 1:
        a2 = _slope_squared(system)
        if a2 <= 1:
            raise WrongRegime("escape threshold for degree one needs |a| > 1")
        beta = max(abs(v) for v in branch_constants(system).values())
        y0 = beta / (a2 - 1)
        return y0 if exact else float(y0)
    exprs = list(branch_polynomials(system).values())
    ident = Poly.x()
    y0 = 0.0
    for p in exprs:
        for q in (p - ident, p + ident):
            for r in real_roots(q):
                y0 = max(y0, abs(r.value))
    if not _verify_escape(exprs, y0):
        raise ArithmeticError(f"escape bound {y0} failed its sampling check")
    return y0


def _regime(system):
    if system.degree == 1:
        a2 = _slope_squared(system)
        if a2 == 1:
            return "neutral", None
        if a2 < 1:
            return "contracting", trapping_radius(system)
        return "expanding", escape_threshold(system)
    return "expanding", escape_threshold(system)


def _default_cycle_points(system, partition):
    from .cycles import find_cycles

    try:
        return [p for c in find_cycles(system, partition, max_period=1) for p in c.points]
    except DegreeOverflow:
        return []


def _confined(system, y):
    trace = global_orbit(system, PlanePoint(0.0, y), which=1, max_events=64, samples=0)
    return trace.terminated == "sigma_confined"


def orbit_fate(system, partition=None, y=0.0, max_iter=1000, cycles=None):
    """Iterate the return map from ``y`` and name the first certificate that applies.

    ``cycles`` is a list of :class:`LimitCycle`; by default the period-one
    cycles are computed.  At ``|a| = 1`` no asymptotic statement applies and
    the verdict is ``Undetermined`` without iterating.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be positive")
    partition = partition or build_partition(system)
    regime, bound = _regime(system)
    if regime == "neutral":
        return FateReport(UNDETERMINED, None, 0, (y,), "neutral reset |a| = 1")
    if cycles is None:
        cycle_pts = _default_cycle_points(system, partition)
    else:
        cycle_pts = [p for c in cycles for p in c.points]
    history = [y]
    inside = 0
    for it in range(max_iter + 1):
        if not math.isfinite(y):
            tail = [v for v in history if math.isfinite(v)][-WINDOW:]
            return FateReport(ESCAPE, bound, it, tuple(tail), "overflow")
        if locate(partition, y) == 4 and _confined(system, y):
            return FateReport(SIGMA_CONFINED, bound, it, tuple(history[-WINDOW:]))
        if any(abs(y - p) <= CYCLE_TOL for p in cycle_pts):
            return FateReport(CONVERGED, bound, it, tuple(history[-WINDOW:]))
        if regime == "contracting":
            inside = inside + 1 if abs(y) <= bound + TRAP_SLACK else 0
            if inside >= WINDOW:
                return FateReport(TRAPPED, bound, it, tuple(history[-WINDOW:]))
        elif len(history) > WINDOW and abs(y) > bound:
            tail = [abs(v) for v in history[-WINDOW - 1:]]
            if all(u < v for u, v in zip(tail, tail[1:])):
                return FateReport(ESCAPE, bound, it, tuple(history[-WINDOW:]))
        if it == max_iter:
            break
        try:
            y_next, _ = eval_return(system, partition, y)
        except BoundaryPoint as exc:
            vals = list(exc.values.values())
            if not vals or max(vals) - min(vals) > 1e-12 * (1 + abs(vals[0])):
                return FateReport(UNDETERMINED, bound, it, tuple(history[-WINDOW:]),
                                  f"orbit hit branch boundary {y!r}")
            y_next = vals[0]
        y = y_next
        history.append(y)
    return FateReport(UNDETERMINED, bound, max_iter, tuple(history[-WINDOW:]), "budget exhausted")
