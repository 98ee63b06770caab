"""Exact univariate polynomials over the rationals and real-root isolation.

Coefficients are stored as :class:`fractions.Fraction` in ascending order, so
composition and comparison are exact.  Real roots are isolated with Descartes'
rule of signs on the square-free part (integer arithmetic, bisection of the
search interval) and then refined by sign bisection on rational endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = ["Poly", "Root", "real_roots", "poly_range", "sign_at"]


def _frac(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float) and not math.isfinite(c):
        raise ValueError(f"non-finite coefficient {c!r}")
    return Fraction(c)


def _scaled(coeffs):
    """Integer numerators over a common denominator."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _from_scaled(nums, den):
    return Poly(Fraction(n, den) for n in nums)


def _convolve(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


class Poly:
    """Immutable polynomial with rational coefficients (ascending powers)."""

    __slots__ = ("coeffs", "_float_coeffs")

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self._float_coeffs = None

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def const(cls, c):
        return cls((c,))

    @property
    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly((other,))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        a, da = _scaled(self.coeffs)
        b, db = _scaled(other.coeffs)
        return _from_scaled(_convolve(a, b), da * db)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def compose(self, inner):
        """Return ``self(inner(y))``."""
        inner = self._coerce(inner)
        if self.is_zero():
            return Poly()
        # Horner on integer numerators: sum A_k I^k Di^(d-k) over Da Di^d
        a, da = _scaled(self.coeffs)
        b, db = _scaled(inner.coeffs or (Fraction(0),))
        d = len(a) - 1
        acc = [a[-1]]
        scale = 1
        for k in range(d - 1, -1, -1):
            scale *= db
            acc = _convolve(acc, b)
            acc[0] += a[k] * scale
        return _from_scaled(acc, da * scale)

    def derivative(self):
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        """Exact Horner evaluation for rational ``x``; float Horner otherwise."""
        if isinstance(x, (int, Rational)) and not isinstance(x, bool):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        return self.evalf(x)

    @property
    def float_coeffs(self):
        if self._float_coeffs is None:
            self._float_coeffs = tuple(float(c) for c in self.coeffs)
        return self._float_coeffs

    def evalf(self, x):
        acc = 0.0
        for c in reversed(self.float_coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        lead = other.lead
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c:
                quot[k - dq] = c
                for j, oc in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * oc
        return Poly(quot), Poly(rem[:dq])

    def monic(self):
        if self.is_zero():
            return self
        lead = self.lead
        return Poly(c / lead for c in self.coeffs)

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def squarefree(self):
        """Product of the distinct irreducible factors (same real roots, all simple)."""
        if self.degree <= 1:
            return self
        if _coprime_mod_prime(self):
            return self
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self
        return self.divmod(g)[0]


_PRIME = (1 << 61) - 1


def _mod_poly(ints, prime):
    out = [c % prime for c in ints]
    while out and out[-1] == 0:
        out.pop()
    return out


def _mod_gcd_degree(a, b, prime):
    while b:
        inv = pow(b[-1], prime - 2, prime)
        while len(a) >= len(b):
            c = a[-1] * inv % prime
            shift = len(a) - len(b)
            for j, bc in enumerate(b):
                a[shift + j] = (a[shift + j] - c * bc) % prime
            while a and a[-1] == 0:
                a.pop()
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def _coprime_mod_prime(p):
    """Cheap sufficient test that ``p`` has no repeated factor."""
    ints = _integer_coeffs(p)
    if ints[-1] % _PRIME == 0:
        return False
    d_ints = [i * c for i, c in enumerate(ints) if i]
    a = _mod_poly(ints, _PRIME)
    b = _mod_poly(d_ints, _PRIME)
    if len(b) != len(d_ints):
        return False
    return _mod_gcd_degree(a, b, _PRIME) == 0


def sign_at(p, x):
    v = p(x)
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class Root:
    """A real root bracketed by rational endpoints ``lo <= root <= hi``."""

    lo: Fraction
    hi: Fraction
    exact: bool = False

    @property
    def value(self):
        if self.exact:
            return float(self.lo)
        return float((self.lo + self.hi) / 2)

    @property
    def mid(self):
        return self.lo if self.exact else (self.lo + self.hi) / 2


def _integer_coeffs(p):
    return _primitive(_scaled(p.coeffs)[0])


def _taylor_shift1(a):
    a = list(a)
    d = len(a) - 1
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            a[j] += a[j + 1]
    return a


def _primitive(a):
    g = 0
    for c in a:
        g = math.gcd(g, c)
        if g == 1:
            return a
    return [c // g for c in a] if g > 1 else a


def _sign_variations(a):
    count = 0
    prev = 0
    for c in a:
        if c:
            s = 1 if c > 0 else -1
            if prev and s != prev:
                count += 1
            prev = s
    return count


def _descartes01(a):
    """Upper bound on the number of roots of ``a`` in the open unit interval."""
    return _sign_variations(_taylor_shift1(a[::-1]))


def _isolate_unit(a, lo, hi, out):
    """Collect isolating intervals of the roots of ``a`` in (0, 1) ~ (lo, hi)."""
    stack = [(a, lo, hi)]
    while stack:
        a, lo, hi = stack.pop()
        v = _descartes01(a)
        if v == 0:
            continue
        if v == 1:
            out.append(Root(lo, hi))
            continue
        d = len(a) - 1
        left = _primitive([c << (d - i) for i, c in enumerate(a)])
        right = _primitive(_taylor_shift1(left))
        mid = (lo + hi) / 2
        if right[0] == 0:
            out.append(Root(mid, mid, exact=True))
            right = right[1:]
        stack.append((left, lo, mid))
        stack.append((right, mid, hi))


def _cauchy_bound(p):
    lead = abs(p.lead)
    m = max(abs(c) for c in p.coeffs[:-1]) / lead if p.degree > 0 else Fraction(0)
    bound = 1 + m
    k = 1
    while k <= bound:
        k *= 2
    return Fraction(k)


def _int_sign(ints, r):
    """Sign of the integer polynomial ``ints`` at the rational ``r``."""
    num, den = r.numerator, r.denominator
    acc = 0
    scale = 1
    for c in reversed(ints):
        acc = acc * num + c * scale
        scale *= den
    return (acc > 0) - (acc < 0)


def _int_value(ints, r):
    """``(acc, scale)`` with ``ints(r) = acc / scale``."""
    num, den = r.numerator, r.denominator
    acc = 0
    scale = 1
    for c in reversed(ints):
        acc = acc * num + c * scale
        scale *= den
    return acc, scale


def _newton(ints, d_ints, lo, hi, tol):
    """Exact Newton from the midpoint, iterates kept on a dyadic grid."""
    x = (lo + hi) / 2
    grid = 2 ** 80
    for _ in range(8):
        v, sv = _int_value(ints, x)
        dv, sd = _int_value(d_ints, x)
        if dv == 0:
            return None
        step = Fraction(v * sd, dv * sv)
        x = Fraction(round((x - step) * grid), grid)
        if not lo < x < hi:
            return None
        if abs(step) <= tol * max(1, abs(x)) / 16:
            return x
    return None


def _refine(ints, d_ints, root, tol):
    if root.exact:
        return root
    lo, hi = root.lo, root.hi
    s_lo = _int_sign(ints, lo) or _int_sign(d_ints, lo)
    s_hi = _int_sign(ints, hi) or -_int_sign(d_ints, hi)
    if s_lo == s_hi:
        raise ArithmeticError("isolating interval without a sign change")
    guesses = 2
    while hi - lo > tol * max(1, abs(lo), abs(hi)):
        if guesses and hi - lo < 1e-3 * max(1, abs(lo), abs(hi)):
            guesses -= 1
            x = _newton(ints, d_ints, lo, hi, tol)
            if x is not None:
                e = Fraction(tol) * max(1, abs(x)) / 4
                a, b = max(lo, x - e), min(hi, x + e)
                sa, sb = _int_sign(ints, a), _int_sign(ints, b)
                if sa == 0:
                    return Root(a, a, exact=True)
                if sb == 0:
                    return Root(b, b, exact=True)
                if sa == s_lo and sb != s_lo:
                    lo, hi = a, b
                    continue
        mid = (lo + hi) / 2
        s = _int_sign(ints, mid)
        if s == 0:
            return Root(mid, mid, exact=True)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    snapped = ((lo + hi) / 2).limit_denominator(10**6)
    if lo <= snapped <= hi and _int_sign(ints, snapped) == 0:
        return Root(snapped, snapped, exact=True)
    return Root(lo, hi)


def real_roots(p, lo=None, hi=None, tol=2.0**-52):
    """Distinct real roots of ``p`` in the open interval ``(lo, hi)``.

    ``lo``/``hi`` of ``None`` (or infinite floats) mean unbounded.  Roots are
    returned sorted, each refined to relative width ``tol``; rational roots
    with small denominators are detected exactly.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    q = p.squarefree()
    if q.degree <= 0:
        return []
    bound = _cauchy_bound(q)
    a = -bound if lo is None or lo == -math.inf else max(Fraction(lo), -bound)
    b = bound if hi is None or hi == math.inf else min(Fraction(hi), bound)
    if a >= b:
        return []
    width = b - a
    t = q.compose(Poly((a, width)))
    coeffs = _integer_coeffs(t)
    if coeffs[0] == 0:
        # root at the excluded left endpoint
        coeffs = coeffs[1:]
        while coeffs and coeffs[0] == 0:
            coeffs = coeffs[1:]
    found = []
    if len(coeffs) > 1:
        _isolate_unit(coeffs, a, b, found)
    ints = _integer_coeffs(q)
    d_ints = [i * c for i, c in enumerate(ints) if i]
    roots = [_refine(ints, d_ints, r, tol) for r in found]
    roots = [r for r in roots if not (r.exact and (r.lo <= a or r.lo >= b))]
    roots.sort(key=lambda r: r.lo)
    return roots


def poly_range(p, a, b):
    """Float range ``(min, max)`` of ``p`` over the closed interval ``[a, b]``."""
    pts = [Fraction(a), Fraction(b)]
    dp = p.derivative()
    if not dp.is_zero() and dp.degree >= 1:
        pts.extend(r.mid for r in real_roots(dp, a, b))
    vals = [float(p(x)) for x in pts]
    return min(vals), max(vals)
