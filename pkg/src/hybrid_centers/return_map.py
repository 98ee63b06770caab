"""The piecewise-polynomial first return map on the switching line.

Starting from ``y`` with an attempt to enter side 1, one return consists of
an attempt on side 1 followed by an attempt on side 2, each ending in a jump
through the reset.  Whether each attempt succeeds gives the four branches

    1: reset(eta2 - reset(eta1 - y))     both sides entered
    2: reset(reset(eta1 - y))            side 1 entered, side 2 refused
    3: reset(eta2 - reset(y))            side 1 refused, side 2 entered
    4: reset(reset(y))                   both refused
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import intervals as iv
from .core import eta, equilibrium_on_sigma, tangency_point, vector_field_eval, PlanePoint
from .errors import BoundaryPoint, DegenerateReset
from .polynomial import Poly

__all__ = [
    "TransversalIntervals",
    "ReturnBranch",
    "BranchPartition",
    "BRANCH_ENTRIES",
    "transversal_intervals",
    "branch_polynomials",
    "branch_value",
    "branch_slope",
    "build_partition",
    "eval_return",
    "return_derivative",
    "locate",
    "check_coverage",
]

VISIBLE = "visible"
INVISIBLE = "invisible"
EQUILIBRIUM_ON_SIGMA = "equilibrium_on_sigma"

# branch id -> (side 1 entered, side 2 entered)
BRANCH_ENTRIES = {1: (True, True), 2: (True, False), 3: (False, True), 4: (False, False)}
ENTRIES_BRANCH = {v: k for k, v in BRANCH_ENTRIES.items()}


@dataclass(frozen=True)
class TransversalIntervals:
    side: int
    entering: tuple
    leaving: tuple
    fold: float
    fold_kind: str
    fold_exact: Fraction = None

    def enters(self, y):
        """Entry test including the fold convention."""
        if iv.contains(self.entering, y):
            return True
        if y == self.fold:
            return self.fold_kind == VISIBLE
        return False


def transversal_intervals(center, side):
    if side not in (1, 2):
        raise ValueError(f"side must be 1 or 2, got {side!r}")
    fold = tangency_point(center, exact=True)
    # x' = -delta*k*(y - fold) on x = 0
    into_side1_above = center.delta > 0
    above, below = iv.ray_above(fold), iv.ray_below(fold)
    if (side == 1) == into_side1_above:
        entering, leaving = above, below
    else:
        entering, leaving = below, above
    if equilibrium_on_sigma(center):
        kind = EQUILIBRIUM_ON_SIGMA
    else:
        q = vector_field_eval(center, PlanePoint(0.0, float(fold))).y
        xdd = -center.delta * float(center.k) * q
        visible = xdd < 0 if side == 1 else xdd > 0
        kind = VISIBLE if visible else INVISIBLE
    return TransversalIntervals(side, entering, leaving, float(fold), kind, fold)


@dataclass(frozen=True)
class ReturnBranch:
    id: int
    domain: tuple
    expr: Poly

    @property
    def entries(self):
        return BRANCH_ENTRIES[self.id]


@dataclass(frozen=True)
class BranchPartition:
    branches: tuple
    boundary_points: tuple
    side1: TransversalIntervals
    side2: TransversalIntervals
    eta1: Fraction
    eta2: Fraction

    def branch(self, branch_id):
        return self.branches[branch_id - 1]

    def domain(self, branch_id):
        return self.branches[branch_id - 1].domain


def branch_polynomials(system):
    """Exact expressions of the four branches, keyed by branch id."""
    phi = system.reset.poly
    e1 = eta(system.center1, exact=True)
    e2 = eta(system.center2, exact=True)
    after1 = phi.compose(Poly((e1, -1)))
    refused1 = phi
    return {
        1: phi.compose(Fraction(e2) - after1),
        2: phi.compose(after1),
        3: phi.compose(Fraction(e2) - refused1),
        4: phi.compose(refused1),
    }


def branch_value(system, branch_id, y):
    """Float value of a branch, evaluated in nested form."""
    e1, e2 = system.etas
    enter1, enter2 = BRANCH_ENTRIES[branch_id]
    y3 = system.reset(e1 - y) if enter1 else system.reset(y)
    return system.reset(e2 - y3) if enter2 else system.reset(y3)


def branch_slope(system, branch_id, y):
    """Derivative of a branch by the chain rule on the nested form."""
    e1, e2 = system.etas
    enter1, enter2 = BRANCH_ENTRIES[branch_id]
    phi = system.reset
    if enter1:
        y3, d3 = phi(e1 - y), -phi.derivative(e1 - y)
    else:
        y3, d3 = phi(y), phi.derivative(y)
    if enter2:
        return -phi.derivative(e2 - y3) * d3
    return phi.derivative(y3) * d3


def build_partition(system):
    side1 = transversal_intervals(system.center1, 1)
    side2 = transversal_intervals(system.center2, 2)
    phi = system.reset.poly
    e1 = eta(system.center1, exact=True)
    after_chord = phi.compose(Poly((e1, -1)))
    fold2 = side2.fold_exact
    if (after_chord - fold2).is_zero() or (phi - fold2).is_zero():
        raise DegenerateReset("reset is constant on the fold of side 2")
    enter2_via_chord = iv.preimage(after_chord, side2.entering)
    leave2_via_chord = iv.preimage(after_chord, side2.leaving)
    enter2_direct = iv.preimage(phi, side2.entering)
    leave2_direct = iv.preimage(phi, side2.leaving)
    domains = {
        1: iv.intersect(side1.entering, enter2_via_chord),
        2: iv.intersect(side1.entering, leave2_via_chord),
        3: iv.intersect(side1.leaving, enter2_direct),
        4: iv.intersect(side1.leaving, leave2_direct),
    }
    exprs = branch_polynomials(system)
    branches = tuple(ReturnBranch(j, domains[j], exprs[j]) for j in (1, 2, 3, 4))
    boundary = set()
    for br in branches:
        boundary.update(iv.endpoints(br.domain))
    boundary.add(side1.fold)
    return BranchPartition(branches, tuple(sorted(boundary)), side1, side2,
                           e1, eta(system.center2, exact=True))


def locate(partition, y):
    """Branch id whose domain contains ``y``, or ``None`` on a boundary point."""
    for br in partition.branches:
        if iv.contains(br.domain, y):
            return br.id
    return None


def _adjacent_values(system, partition, y):
    values = {}
    for br in partition.branches:
        for lo, hi in br.domain:
            if lo == y or hi == y:
                values[br.id] = branch_value(system, br.id, y)
                break
    return values


def eval_return(system, partition, y):
    """``(P(y), branch id)``; raises :class:`BoundaryPoint` off the domain interiors."""
    branch_id = locate(partition, y)
    if branch_id is None:
        raise BoundaryPoint(y, _adjacent_values(system, partition, y))
    return branch_value(system, branch_id, y), branch_id


def return_derivative(system, partition, y):
    branch_id = locate(partition, y)
    if branch_id is None:
        raise BoundaryPoint(y, _adjacent_values(system, partition, y))
    return branch_slope(system, branch_id, y)


def check_coverage(partition):
    """True when the branch domains plus the boundary points tile the real line."""
    parts = sorted(p for br in partition.branches for p in br.domain)
    if not parts:
        return False
    if parts[0][0] != -math.inf or parts[-1][1] != math.inf:
        return False
    boundary = set(partition.boundary_points)
    for (_, hi), (lo, _) in zip(parts, parts[1:]):
        if hi != lo or hi not in boundary:
            return False
    return True
