"""Planar hybrid systems built from two linear centers and a polynomial reset.

The switching line ``x = 0`` separates a center on ``x < 0`` from one on
``x > 0``; whenever an orbit reaches the line its y-coordinate passes
through the reset polynomial.  The first return map to the line is
piecewise polynomial with four branches, and most of the analysis here
(periodic orbits, asymptotic bounds, chaos witnesses) works on that map.
"""

from .asymptotics import FateReport, escape_threshold, orbit_fate, trapping_radius
from .chaos import (
    BitString,
    ChaosCertificate,
    certify_theorem3,
    conjugacy_h,
    dense_orbit_prefix,
    logistic,
    logistic_periodic_points,
    tent,
    tent_exact_iterate,
)
from .core import (
    HybridSystem,
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
from .cycles import LimitCycle, affine_regular_cycle, classify, displacement, find_cycles
from .errors import (
    BoundaryPoint,
    DegenerateReset,
    DegreeOverflow,
    EquilibriumReached,
    HybridError,
    InsufficientPrecision,
    InvalidSystem,
    OutOfDomain,
    SideMismatch,
    SpecError,
    WrongDegree,
    WrongRegime,
)
from .flow import FlowArc, ellipse_sigma_intersections, flow, sigma_chord, time_of_flight
from .orbit import OrbitTrace, first_return_numeric, global_orbit, step, validate_trace
from .return_map import (
    BranchPartition,
    build_partition,
    eval_return,
    return_derivative,
    transversal_intervals,
)

__version__ = "0.1.0"
