"""Tent map, logistic map, their conjugacy, and exact binary-shift dynamics.

In binary, one tent step drops the leading digit and complements the rest
when that digit was 1.  After ``m`` steps the expansion is
``0.s_{m+1} s_{m+2} ...``, complemented exactly when ``s_m = 1``.  Working on
digit strings keeps iterates exact long after floating point has lost every
significant bit.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BoundaryPoint, InsufficientPrecision, OutOfDomain
from .polynomial import Poly
from .return_map import branch_polynomials, build_partition, eval_return

__all__ = [
    "BitString",
    "ChaosCertificate",
    "tent",
    "logistic",
    "conjugacy_h",
    "tent_exact_iterate",
    "double_tent_rule",
    "dense_orbit_blocks",
    "dense_orbit_prefix",
    "dense_orbit_witness",
    "logistic_periodic_points",
    "max_gap",
    "certify_theorem3",
    "F4_SQUARED",
]

DEFAULT_PRECISION = 256
F4_SQUARED = Poly((0, 16, -80, 128, -64))


def _checked(x, name):
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0) or np.any(arr > 1):
        raise OutOfDomain(f"{name} is defined on [0, 1], got {x!r}")
    return arr


def _out(arr, x):
    return float(arr) if np.ndim(x) == 0 else arr


def tent(x):
    arr = _checked(x, "tent")
    return _out(np.where(arr <= 0.5, 2 * arr, 2 - 2 * arr), x)


def logistic(x):
    arr = _checked(x, "logistic")
    return _out(4 * arr * (1 - arr), x)


def conjugacy_h(x):
    """``sin^2(pi x / 2)``, carrying the tent map onto the logistic map."""
    arr = _checked(x, "conjugacy_h")
    return _out(np.sin(np.pi * arr / 2) ** 2, x)


@dataclass(frozen=True)
class BitString:
    """Binary digits ``0.b1 b2 ...`` of a number in [0, 1].

    When ``exact`` is true the digits after ``bits`` all equal ``tail``
    (0 for a dyadic rational; 1 arises from complementing one).
    """

    bits: tuple
    exact: bool = False
    tail: int = 0

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")
        if self.tail not in (0, 1):
            raise ValueError("tail must be 0 or 1")
        if not bits and not self.exact:
            raise ValueError("an inexact BitString needs at least one digit")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def parse(cls, text, exact=False):
        """From ``'0.0110'`` or ``'0110'``."""
        digits = text[2:] if text.startswith("0.") else text
        return cls(tuple(int(c) for c in digits), exact)

    @classmethod
    def from_fraction(cls, x, length=DEFAULT_PRECISION):
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise OutOfDomain(f"BitString needs a value in [0, 1], got {x}")
        if x == 1:
            return cls((), True, 1)
        bits = []
        for _ in range(length):
            x *= 2
            bit = int(x >= 1)
            bits.append(bit)
            x -= bit
            if x == 0:
                return cls(tuple(bits), True)
        return cls(tuple(bits), False)

    def __len__(self):
        return len(self.bits)

    def __str__(self):
        return "0." + "".join(map(str, self.bits))

    def digit(self, i):
        """The ``i``-th digit, 1-based."""
        if i <= len(self.bits):
            return self.bits[i - 1]
        if self.exact:
            return self.tail
        raise InsufficientPrecision(f"digit {i} requested from {len(self.bits)} digits")

    def value(self):
        """The represented rational (the truncation when inexact)."""
        num = 0
        for b in self.bits:
            num = 2 * num + b
        v = Fraction(num, 1 << len(self.bits))
        if self.exact and self.tail:
            v += Fraction(1, 1 << len(self.bits))
        return v

    def __float__(self):
        return float(self.value())

    def startswith(self, block):
        return self.bits[: len(block)] == tuple(block)


def tent_exact_iterate(s, k):
    """``T^k`` on a digit string, by the shift-and-complement rule."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return s
    if not s.exact and len(s.bits) <= k:
        raise InsufficientPrecision(f"{len(s.bits)} digits cannot support {k} tent steps")
    flip = s.digit(k)
    rest = s.bits[k:]
    if flip:
        rest = tuple(1 - b for b in rest)
    tail = s.tail ^ flip if s.exact else 0
    return BitString(rest, s.exact, tail)


def double_tent_rule(s, n=1):
    """``F^n = T^{2n}`` computed directly: shift by ``2n``, complement iff ``s_{2n} = 1``."""
    if n == 0:
        return s
    if not s.exact and len(s.bits) <= 2 * n:
        raise InsufficientPrecision(f"{len(s.bits)} digits cannot support {n} steps of T^2")
    rest = s.bits[2 * n:]
    key = s.digit(2 * n)
    if key:
        rest = tuple(1 - b for b in rest)
    return BitString(rest, s.exact, s.tail ^ key if s.exact else 0)


def dense_orbit_blocks(length):
    """Even-length blocks ending in 0, ordered by the number of ones, then numerically."""
    if length < 2 or length % 2:
        raise ValueError("block length must be an even integer >= 2")
    heads = range(1 << (length - 1))
    order = sorted(heads, key=lambda v: (bin(v).count("1"), v))
    return [tuple(int(c) for c in format(v, f"0{length - 1}b")) + (0,) for v in order]


def dense_orbit_prefix(max_block_length):
    """All blocks of length 2, 4, ..., ``max_block_length`` concatenated."""
    if max_block_length < 2:
        raise ValueError("max_block_length must be at least 2")
    bits = []
    for length in range(2, max_block_length + 1, 2):
        for block in dense_orbit_blocks(length):
            bits.extend(block)
    return BitString(tuple(bits), False)


def dense_orbit_witness(max_block_length=8, steps=None):
    """Rows ``(m, x_m, h(x_m))`` along the ``T^2`` orbit of the dense-orbit prefix.

    Each ``x_m`` is read off its own digit string, so the values carry no
    accumulated rounding.
    """
    s = dense_orbit_prefix(max_block_length)
    steps = (len(s) // 2 - 1) if steps is None else steps
    rows = []
    for m in range(steps + 1):
        x = float(s)
        rows.append((m, x, conjugacy_h(x)))
        if m < steps:
            s = double_tent_rule(s)
    return rows


def _blocks_covered(s, max_block_length):
    """Largest even ``L`` such that every block of length <= ``L`` starts some ``F``-iterate."""
    prefixes = set()
    longest = max_block_length
    cur = s
    while len(cur) >= 2:
        prefixes.add(cur.bits[:longest])
        if len(cur) <= 2:
            break
        cur = double_tent_rule(cur)
    covered = 0
    for length in range(2, max_block_length + 1, 2):
        for block in dense_orbit_blocks(length):
            if not any(p[:length] == block for p in prefixes):
                return covered
        covered = length
    return covered


def _f4_iter(x, k):
    for _ in range(k):
        x = 4.0 * x * (1.0 - x)
    return x


def _image(a, b, k):
    """Exact images of [a, b] under f4, f4^2, ..., f4^k, plus monotonicity."""
    monotone = True
    for _ in range(k):
        if a < 0.5 < b:
            monotone = False
        fa, fb = 4 * a * (1 - a), 4 * b * (1 - b)
        lo, hi = min(fa, fb), max(fa, fb)
        if a <= 0.5 <= b:
            hi = 1.0
        a, b = lo, hi
    return a, b, monotone


def logistic_periodic_points(period):
    """Fixed points of ``f4^period`` in [0, 1], ascending.

    Intervals are split until ``f4^period`` is monotone on each piece or the
    piece provably holds no fixed point; each surviving sign change is then
    refined by bisection.
    """
    if not 1 <= period <= 12:
        raise ValueError("period must be between 1 and 12")
    k = period
    found = []

    def g(x):
        return _f4_iter(x, k) - x

    stack = [(0.0, 1.0)]
    while stack:
        a, b = stack.pop()
        lo, hi, monotone = _image(a, b, k)
        if lo - b > 0 or hi - a < 0:
            continue
        if monotone:
            ga, gb = g(a), g(b)
            if ga == 0:
                found.append(a)
            if gb == 0:
                found.append(b)
            if ga * gb < 0:
                for _ in range(200):
                    m = 0.5 * (a + b)
                    if m in (a, b):
                        break
                    gm = g(m)
                    if gm == 0:
                        a = b = m
                        break
                    if (gm < 0) == (ga < 0):
                        a, ga = m, gm
                    else:
                        b = m
                found.append(0.5 * (a + b))
            continue
        if b - a < 1e-15:
            continue
        m = 0.5 * (a + b)
        stack.append((m, b))
        stack.append((a, m))
    found.sort()
    out = []
    for x in found:
        if not out or x - out[-1] > 1e-10:
            out.append(x)
    return out


def max_gap(points, lo=0.0, hi=1.0):
    pts = sorted(p for p in points if lo <= p <= hi)
    edges = [lo] + pts + [hi]
    return max(b - a for a, b in zip(edges, edges[1:]))


@dataclass(frozen=True)
class ChaosCertificate:
    coefficient_match: bool
    interval_invariant: bool
    periodic_density_depth: int
    periodic_max_gap: float
    transitivity_blocks: int
    conjugacy_consistent: bool
    sensitivity_estimate: float
    failed: tuple = ()
    planar_claim: str = "asserted"
    details: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self):
        return self.coefficient_match and self.interval_invariant and not self.failed

    def to_dict(self):
        return {
            "passed": self.passed,
            "coefficient_match": self.coefficient_match,
            "interval_invariant": self.interval_invariant,
            "periodic_density_depth": self.periodic_density_depth,
            "periodic_max_gap": self.periodic_max_gap,
            "transitivity_blocks": self.transitivity_blocks,
            "conjugacy_consistent": self.conjugacy_consistent,
            "sensitivity_estimate": self.sensitivity_estimate,
            "failed": list(self.failed),
            "planar_claim": self.planar_claim,
        }


def _return_value(system, partition, y):
    try:
        return eval_return(system, partition, y)[0]
    except BoundaryPoint as exc:
        vals = list(exc.values.values())
        if vals and max(vals) - min(vals) <= 1e-12 * (1 + abs(vals[0])):
            return vals[0]
        raise


def _sensitivity(trials, flip_at, horizon, seed):
    rng = random.Random(seed)
    worst = math.inf
    for _ in range(trials):
        bits = tuple(rng.getrandbits(1) for _ in range(DEFAULT_PRECISION))
        other = bits[: flip_at - 1] + (1 - bits[flip_at - 1],) + bits[flip_at:]
        x, y = BitString(bits, True), BitString(other, True)
        best = 0.0
        for j in range(horizon + 1):
            xj, yj = tent_exact_iterate(x, j), tent_exact_iterate(y, j)
            best = max(best, abs(conjugacy_h(float(xj)) - conjugacy_h(float(yj))))
        worst = min(worst, best)
    return worst


def certify_theorem3(system, depth=4, max_block_length=8, grid=1001,
                     sensitivity_trials=32, seed=0):
    """Check that the return map is ``f4^2`` on [0, 1] and collect chaos witnesses.

    ``depth`` is the largest return-map period whose periodic points are
    enumerated; density is measured as the largest gap they leave in [0, 1].
    """
    partition = build_partition(system)
    failed = []
    match = branch_polynomials(system)[1] == F4_SQUARED
    if not match:
        failed.append("coefficient_match")

    ys = np.linspace(0.0, 1.0, grid)
    invariant = True
    try:
        vals = [_return_value(system, partition, float(y)) for y in ys]
        invariant = all(-1e-12 <= v <= 1 + 1e-12 for v in vals)
    except BoundaryPoint:
        invariant = False
    if not invariant:
        failed.append("interval_invariant")

    if match:
        pts = logistic_periodic_points(2 * depth)
        density_depth = depth
    else:
        from .cycles import find_cycles

        density_depth = min(depth, 2)
        cycles = find_cycles(system, partition, max_period=density_depth)
        pts = [p for c in cycles for p in c.points if 0 <= p <= 1]
    gap = max_gap(pts)
    if gap >= 0.05:
        failed.append("periodic_density")

    x_star = dense_orbit_prefix(max_block_length)
    blocks = _blocks_covered(x_star, max_block_length)
    if blocks < max_block_length:
        failed.append("transitivity")

    consistent = True
    s = x_star
    for _ in range(24):
        nxt = double_tent_rule(s)
        lhs = _return_value(system, partition, conjugacy_h(float(s)))
        if abs(lhs - conjugacy_h(float(nxt))) > 1e-9:
            consistent = False
            break
        s = nxt
    if not consistent:
        failed.append("conjugacy_consistency")

    sens = _sensitivity(sensitivity_trials, 20, 40, seed)
    if not sens > 0.1:
        failed.append("sensitivity")

    return ChaosCertificate(match, invariant, density_depth, gap, blocks, consistent, sens,
                            tuple(failed), "asserted",
                            {"periodic_points": len(pts), "prefix_digits": len(x_star)})
