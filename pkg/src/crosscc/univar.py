"""Exact univariate polynomial tools.

Sturm sequences use primitive pseudo-remainders (integer coefficients,
content stripped, sign preserved), which keeps degree-50 chains with
50-digit coefficients tractable.  Root counting follows the half-open
(a, b] convention throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from .mpoly import MPoly, PolyMatrix, poly_det
from .rationals import Interval, RatLike, rat


class UPoly:
    """Dense univariate polynomial over Fraction, coeffs[i] on x^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[RatLike]):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    @staticmethod
    def zero() -> "UPoly":
        return UPoly([])

    @staticmethod
    def from_roots(roots: Sequence[RatLike]) -> "UPoly":
        p = UPoly([1])
        for r in roots:
            p = p * UPoly([-rat(r), 1])
        return p

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        if self.is_zero():
            raise ValueError("zero polynomial")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __add__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [Fraction(0)] * (n - len(self.coeffs))
        b = other.coeffs + [Fraction(0)] * (n - len(other.coeffs))
        return UPoly([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "UPoly":
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            c = rat(other)
            return UPoly([x * c for x in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __call__(self, x: RatLike) -> Fraction:
        x = rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UPoly":
        return UPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "UPoly") -> Tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        d = other.degree
        lc = other.leading()
        quot = [Fraction(0)] * max(0, len(rem) - d)
        while len(rem) - 1 >= d and rem:
            k = len(rem) - 1 - d
            q = rem[-1] / lc
            quot[k] = q
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= q * c
            while rem and rem[-1] == 0:
                rem.pop()
        return UPoly(quot), UPoly(rem)

    def exact_div(self, other: "UPoly") -> "UPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("univariate division is not exact")
        return q

    def primitive_int(self) -> "UPoly":
        """Integer-primitive representative with the same sign pattern."""
        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        return UPoly([Fraction(v // g) for v in ints])

    def content_free_signed(self) -> "UPoly":
        return self.primitive_int()

    def gcd(self, other: "UPoly") -> "UPoly":
        """Monic gcd via primitive pseudo-remainder sequence."""
        a, b = self.primitive_int(), other.primitive_int()
        if a.is_zero():
            base = b
        elif b.is_zero():
            base = a
        else:
            while not b.is_zero():
                r = _prem(a, b)
                a, b = b, r.primitive_int() if not r.is_zero() else r
            base = a
        if base.is_zero():
            return base
        lc = base.leading()
        return UPoly([c / lc for c in base.coeffs])

    def squarefree(self) -> "UPoly":
        """p / gcd(p, p'), normalized integer-primitive."""
        if self.degree <= 1:
            return self.primitive_int()
        g = self.gcd(self.derivative())
        if g.degree == 0:
            return self.primitive_int()
        return self.exact_div(g).primitive_int()

    def sign_at(self, x: RatLike) -> int:
        """Exact sign of p(x); pure-integer path for integer coefficients."""
        if self.is_zero():
            return 0
        x = rat(x)
        if any(c.denominator != 1 for c in self.coeffs):
            val = self(x)
            return (val > 0) - (val < 0)
        u, v = x.numerator, x.denominator
        # sign(p(u/v)) = sign(sum c_i u^i v^(d-i)), evaluated by Horner
        acc = self.coeffs[-1].numerator
        vp = 1
        for c in reversed(self.coeffs[:-1]):
            vp *= v
            acc = acc * u + c.numerator * vp
        return (acc > 0) - (acc < 0)

    def __repr__(self):
        return f"UPoly({[str(c) for c in self.coeffs]})"


def _prem(a: UPoly, b: UPoly) -> UPoly:
    """Pseudo-remainder of lc(b)^delta * a by b, sign-corrected to match
    the true remainder up to a positive factor."""
    if a.degree < b.degree:
        return a
    delta = a.degree - b.degree + 1
    lc = b.leading()
    scaled = a * lc**delta
    _, r = scaled.divmod(b)
    if lc < 0 and delta % 2 == 1:
        return -r
    return r


class SturmSequence:
    """Signed (primitive pseudo-)remainder sequence of (p, p')."""

    def __init__(self, p: UPoly):
        if p.is_zero():
            raise ValueError("Sturm sequence of the zero polynomial")
        chain = [p.primitive_int()]
        dp = p.derivative()
        if not dp.is_zero():
            chain.append(dp.primitive_int())
            while chain[-1].degree > 0:
                r = _prem(chain[-2], chain[-1])
                if r.is_zero():
                    break
                chain.append((-r).primitive_int())
        self.chain = chain

    def variations_at(self, x: Fraction) -> int:
        signs = []
        for q in self.chain:
            s = q.sign_at(x)
            if s != 0:
                signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def sturm_sequence(p: UPoly) -> SturmSequence:
    return SturmSequence(p)


def count_roots(p: UPoly, a: RatLike, b: RatLike) -> int:
    """Number of distinct real roots of p in the half-open interval (a, b]."""
    a, b = rat(a), rat(b)
    if a >= b:
        raise ValueError("need a < b")
    if p.is_zero():
        raise ValueError("zero polynomial has every point as a root")
    q = p.squarefree()
    if q.degree <= 0:
        return 0
    extra = 1 if q(b) == 0 else 0
    # peel off exact roots sitting at the endpoints, then use Sturm on (a, b)
    while not q.is_zero() and q(a) == 0:
        q = q.exact_div(UPoly([-a, 1]))
    while not q.is_zero() and q(b) == 0:
        q = q.exact_div(UPoly([-b, 1]))
    if q.degree <= 0:
        return extra
    seq = SturmSequence(q)
    return seq.variations_at(a) - seq.variations_at(b) + extra


def isolate_root(p: UPoly, a: RatLike, b: RatLike, eps: RatLike) -> Interval:
    """Shrink (a, b] to width <= eps around its unique root, by bisection
    on exact Sturm counts of the square-free part."""
    a, b, eps = rat(a), rat(b), rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if count_roots(p, a, b) != 1:
        raise ValueError("interval does not isolate exactly one root")
    q = p.squarefree()
    if q(b) == 0:
        return Interval(b, b)
    while q(a) == 0:
        q = q.exact_div(UPoly([-a, 1]))
    if q.degree == 1:
        r = -q.coeffs[0] / q.coeffs[1]
        return Interval(r, r)
    seq = SturmSequence(q)
    lo, hi = a, b
    v_lo = seq.variations_at(lo)
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if q(mid) == 0:
            return Interval(mid, mid)
        v_mid = seq.variations_at(mid)
        if v_lo - v_mid == 1:
            hi = mid
        else:
            lo, v_lo = mid, v_mid
    return Interval(lo, hi)


def upoly_from_mpoly(f: MPoly, var: str) -> UPoly:
    """Convert an MPoly that uses only `var` into a UPoly."""
    used = f.variables()
    if used and used != [var]:
        raise ValueError(f"polynomial involves {used}, expected only {var!r}")
    d = f.degree_in(var) if not f.is_zero() else -1
    coeffs = [Fraction(0)] * (d + 1)
    i = f.ring.index[var]
    for m, c in f.terms.items():
        coeffs[m[i]] = c
    return UPoly(coeffs)


def upoly_to_mpoly(p: UPoly, ring, var: str) -> MPoly:
    x = MPoly.var(ring, var)
    out = MPoly.zero(ring)
    for i, c in enumerate(p.coeffs):
        if c:
            out = out + MPoly.const(ring, c) * x**i
    return out


def resultant_wrt(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Sylvester-determinant resultant of f and g as polynomials in `var`,
    with MPoly coefficients in the remaining variables."""
    fc = f.coefficients_in(var)
    gc = g.coefficients_in(var)
    m = max(fc) if fc else -1
    n = max(gc) if gc else -1
    if m <= 0 or n <= 0:
        raise ValueError("both polynomials must have positive degree in the variable")
    ring = f.ring
    zero = MPoly.zero(ring)
    size = m + n
    rows: List[List[MPoly]] = []
    frow = [fc.get(m - j, zero) for j in range(m + 1)]
    grow = [gc.get(n - j, zero) for j in range(n + 1)]
    for i in range(n):
        rows.append([zero] * i + frow + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + grow + [zero] * (size - i - n - 1))
    return poly_det(PolyMatrix(rows))
