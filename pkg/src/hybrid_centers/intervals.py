"""Finite unions of open intervals on the switching line.

An interval set is a sorted tuple of pairwise disjoint open intervals
``(lo, hi)`` with float endpoints; ``-inf``/``inf`` mark unbounded ends.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .polynomial import real_roots

INF = math.inf

REAL_LINE = ((-INF, INF),)
EMPTY = ()


def normalize(parts):
    """Sort, drop empty pieces and keep open intervals disjoint."""
    parts = sorted((float(lo), float(hi)) for lo, hi in parts if lo < hi)
    return tuple(parts)


def intersect(a, b):
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        lo = max(a[i][0], b[j][0])
        hi = min(a[i][1], b[j][1])
        if lo < hi:
            out.append((lo, hi))
        if a[i][1] < b[j][1]:
            i += 1
        else:
            j += 1
    return tuple(out)


def contains(parts, y):
    for lo, hi in parts:
        if lo < y < hi:
            return True
        if lo >= y:
            break
    return False


def endpoints(parts):
    pts = set()
    for lo, hi in parts:
        for e in (lo, hi):
            if math.isfinite(e):
                pts.add(e)
    return tuple(sorted(pts))


def component_of(parts, y):
    for lo, hi in parts:
        if lo < y < hi:
            return (lo, hi)
    return None


def distance_to_boundary(parts, y):
    """Distance from ``y`` to the nearest finite endpoint of ``parts``."""
    pts = endpoints(parts)
    if not pts:
        return INF
    return min(abs(y - e) for e in pts)


def total_length(parts, lo=-INF, hi=INF):
    return sum(min(b, hi) - max(a, lo) for a, b in parts if min(b, hi) > max(a, lo))


def _sample_between(left, right):
    """A rational point strictly between two sorted breakpoints."""
    if left is None and right is None:
        return Fraction(0)
    if left is None:
        return right - 1
    if right is None:
        return left + 1
    return (left + right) / 2


def preimage(p, parts):
    """``{y : p(y) in parts}`` for a non-constant polynomial ``p``.

    Breakpoints are isolated exactly; membership between consecutive
    breakpoints is decided by exact evaluation at a rational sample.
    """
    if p.degree < 1:
        raise ValueError("preimage needs a non-constant polynomial")
    out = []
    for lo, hi in parts:
        levels = [c for c in (lo, hi) if math.isfinite(c)]
        roots = []
        for c in levels:
            roots.extend(real_roots(p - Fraction(c)))
        roots.sort(key=lambda r: r.lo)
        flo = Fraction(lo) if math.isfinite(lo) else None
        fhi = Fraction(hi) if math.isfinite(hi) else None
        edges = [None] + roots + [None]
        for k in range(len(edges) - 1):
            left, right = edges[k], edges[k + 1]
            sample = _sample_between(None if left is None else left.mid,
                                     None if right is None else right.mid)
            v = p(sample)
            if (flo is None or v > flo) and (fhi is None or v < fhi):
                a = -INF if left is None else left.value
                b = INF if right is None else right.value
                out.append((a, b))
    return normalize(out)


def ray_above(c):
    return ((float(c), INF),)


def ray_below(c):
    return ((-INF, float(c)),)

