"""Periodic points of the return map and the limit cycles they represent.

Periodic orbits of period ``k`` are searched itinerary by itinerary: for a
word ``i1 .. ik`` of branch ids the composition ``C = P_ik o ... o P_i1`` is
built exactly and the real roots of ``C(y) - y`` are isolated inside the set
of ``y`` that actually follows that word.  Words whose domain chain becomes
empty are pruned before any root finding.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from . import intervals as iv
from .errors import DegreeOverflow, WrongDegree
from .polynomial import Poly, real_roots
from .return_map import branch_polynomials, branch_slope, branch_value, build_partition, eval_return

__all__ = [
    "LimitCycle",
    "AffineCycleReport",
    "displacement",
    "affine_branch_constants",
    "affine_regular_cycle",
    "find_cycles",
    "classify",
    "STABLE",
    "UNSTABLE",
    "NONHYPERBOLIC",
]

STABLE = "stable"
UNSTABLE = "unstable"
NONHYPERBOLIC = "nonhyperbolic"

NO_REGULAR = "no-regular-periodic-orbits"
CONTINUUM = "continuum-of-regular-periodic-orbits"
HAS_CYCLE = "cycle"

BOUNDARY_SLACK = 1e-10
HYPERBOLIC_TOL = 1e-9
DEFAULT_MAX_PERIOD = 6
DEFAULT_DEGREE_CAP = 4096


@dataclass(frozen=True)
class LimitCycle:
    period: int
    points: tuple
    itinerary: tuple
    regular: bool
    multiplier: float
    classification: str
    boundary_adjacent: bool = False

    def to_dict(self):
        return {
            "period": self.period,
            "points": list(self.points),
            "itinerary": list(self.itinerary),
            "regular": self.regular,
            "multiplier": self.multiplier,
            "classification": self.classification,
            "boundary_adjacent": self.boundary_adjacent,
        }


@dataclass(frozen=True)
class AffineCycleReport:
    status: str
    cycle: LimitCycle | None
    y_star: Fraction | None
    beta1: Fraction

    def to_dict(self):
        return {
            "status": self.status,
            "y_star": None if self.y_star is None else float(self.y_star),
            "beta1": float(self.beta1),
            "cycle": None if self.cycle is None else self.cycle.to_dict(),
        }


def displacement(system, partition, y):
    value, _ = eval_return(system, partition, y)
    return value - y


def affine_branch_constants(a, b, eta1, eta2):
    """Constant terms of the four branches for the reset ``y -> a*y + b``.

    Branch ``j`` is ``s_j a^2 y + beta_j`` with ``s = (+1, -1, -1, +1)``.
    """
    return {
        1: b * (1 - a) + a * (eta2 - a * eta1),
        2: b * (1 + a) + a * a * eta1,
        3: b * (1 - a) + a * eta2,
        4: b * (1 + a),
    }


def _classify_value(multiplier):
    # |m| rather than the sign of d' = m - 1: the two agree when m > 0, and
    # only the modulus is right for a folded branch with m < -1.
    m = abs(multiplier)
    if abs(m - 1) <= HYPERBOLIC_TOL:
        return NONHYPERBOLIC
    return STABLE if m < 1 else UNSTABLE


def classify(cycle):
    return _classify_value(cycle.multiplier)


def _make_cycle(system, points, itinerary, boundary_adjacent=False):
    multiplier = 1.0
    for j, y in zip(itinerary, points):
        multiplier *= branch_slope(system, j, y)
    regular = all(j == 1 for j in itinerary)
    return LimitCycle(len(points), tuple(points), tuple(itinerary), regular,
                      multiplier, _classify_value(multiplier), boundary_adjacent)


def affine_regular_cycle(system, partition=None):
    """Closed-form regular cycle of a degree-one reset."""
    if system.degree != 1:
        raise WrongDegree(f"affine_regular_cycle needs a degree-one reset, got degree {system.degree}")
    partition = partition or build_partition(system)
    p1 = branch_polynomials(system)[1]
    beta1 = p1.coeffs[0] if p1.coeffs else Fraction(0)
    a2 = p1.coeffs[1]
    if a2 == 1:
        return AffineCycleReport(CONTINUUM if beta1 == 0 else NO_REGULAR, None, None, beta1)
    y_star = beta1 / (1 - a2)
    if not iv.contains(partition.domain(1), float(y_star)):
        return AffineCycleReport(NO_REGULAR, None, y_star, beta1)
    cycle = _make_cycle(system, [float(y_star)], [1])
    return AffineCycleReport(HAS_CYCLE, cycle, y_star, beta1)


def _near_closure(parts, y):
    for lo, hi in parts:
        if lo - BOUNDARY_SLACK <= y <= hi + BOUNDARY_SLACK:
            return True
    return False


def _orbit_points(system, y0, itinerary):
    pts = [y0]
    for j in itinerary[:-1]:
        pts.append(branch_value(system, j, pts[-1]))
    return pts


def _canonical(points, itinerary):
    k = points.index(min(points))
    return points[k:] + points[:k], itinerary[k:] + itinerary[:k]


def _same_cycle(c1, c2, tol=1e-8):
    if c1.period != c2.period:
        return False
    return all(abs(a - b) <= tol * (1 + abs(b)) for a, b in zip(sorted(c1.points), sorted(c2.points)))


def find_cycles(system, partition=None, max_period=1, degree_cap=DEFAULT_DEGREE_CAP,
                regular_only=False):
    """All isolated periodic points of the return map up to ``max_period``.

    Cycles are sorted by period, then by smallest point.  A word whose
    composition satisfies ``C(y) = y`` identically carries a continuum of
    periodic points; it is skipped with a warning.
    """
    if max_period < 1:
        raise ValueError("max_period must be at least 1")
    n = system.degree
    if n ** (2 * max_period) > degree_cap:
        raise DegreeOverflow(
            f"composed degree {n}^{2 * max_period} exceeds the cap {degree_cap}")
    partition = partition or build_partition(system)
    exprs = branch_polynomials(system)
    ident = Poly.x()
    letters = (1,) if regular_only else (1, 2, 3, 4)
    found = []

    def consider(word, comp, dom):
        target = comp - ident
        if target.is_zero():
            warnings.warn(f"itinerary {word} is a continuum of periodic points", RuntimeWarning)
            return
        if target.degree < 1:
            return
        # isolate only on the hull of the itinerary's domain, plus the boundary slack
        lo, hi = dom[0][0], dom[-1][1]
        roots = real_roots(target, lo - 2 * BOUNDARY_SLACK * (1 + abs(lo)),
                           hi + 2 * BOUNDARY_SLACK * (1 + abs(hi)))
        for root in roots:
            y0 = root.value
            inside = iv.contains(dom, y0)
            if not inside and not _near_closure(dom, y0):
                continue
            pts = _orbit_points(system, y0, word)
            k = len(word)
            if any(abs(pts[j] - y0) <= 1e-9 * (1 + abs(y0)) for j in range(1, k)):
                continue
            pts, w = _canonical(pts, list(word))
            cyc = _make_cycle(system, pts, w, boundary_adjacent=not inside)
            if any(_same_cycle(cyc, other) for other in found):
                continue
            found.append(cyc)

    def walk(word, comp, dom):
        consider(word, comp, dom)
        if len(word) == max_period:
            return
        for j in letters:
            nxt_dom = iv.intersect(dom, iv.preimage(comp, partition.domain(j)))
            if not nxt_dom:
                continue
            walk(word + (j,), exprs[j].compose(comp), nxt_dom)

    for j in letters:
        dom = partition.domain(j)
        if dom:
            walk((j,), exprs[j], dom)
    found.sort(key=lambda c: (c.period, c.points[0], c.itinerary))
    return found
