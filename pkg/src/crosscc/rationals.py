"""Exact rational arithmetic and rational-endpoint interval arithmetic.

Rationals are ``fractions.Fraction`` values (always canonical: reduced,
positive denominator).  Intervals carry exact rational endpoints, so every
operation is outward-sound with no rounding step at all: the true value of
an expression is always contained in the interval computed for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Fraction
RatLike = Union[Fraction, int, str]


def rat(x: RatLike) -> Fraction:
    """Coerce ints, 'p/q' strings and decimal strings to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_to_decimal(x: Fraction, digits: int = 12) -> str:
    """Decimal string with `digits` places, truncated toward zero."""
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = (x.numerator * 10**digits) // x.denominator
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{str(frac).zfill(digits)}"


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not (isinstance(self.lo, Fraction) and isinstance(self.hi, Fraction)):
            object.__setattr__(self, "lo", rat(self.lo))
            object.__setattr__(self, "hi", rat(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    @staticmethod
    def point(x: RatLike) -> "Interval":
        v = rat(x)
        return Interval(v, v)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: RatLike) -> bool:
        v = rat(x)
        return self.lo <= v <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def sign(self) -> int:
        """+1 or -1 if the interval excludes zero, else 0 (undetermined)."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def widened(self, eps: RatLike) -> "Interval":
        e = rat(eps)
        return Interval(self.lo - e, self.hi + e)

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other):
        other = _as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __rsub__(self, other):
        return _as_interval(other) + (-self)

    def __mul__(self, other):
        other = _as_interval(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.reciprocal() ** (-n)
        if n == 0:
            return Interval.point(1)
        if n % 2 == 0 and self.lo < 0 < self.hi:
            # even power of a zero-straddling interval: [0, max endpoint^n]
            return Interval(Fraction(0), max(self.lo**n, self.hi**n))
        lo, hi = self.lo**n, self.hi**n
        return Interval(min(lo, hi), max(lo, hi))

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * _as_interval(other).reciprocal()

    def __rtruediv__(self, other):
        return _as_interval(other) * self.reciprocal()

    def __repr__(self):
        return f"Interval({self.lo}, {self.hi})"

    def decimal_str(self, digits: int = 12) -> str:
        return f"[{rat_to_decimal(self.lo, digits)}, {rat_to_decimal(self.hi, digits)}]"


def _as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(x)


def interval_arith(a: Interval, b: Interval, op: str) -> Interval:
    """Named-operation entry point for {+, -, *}."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    raise ValueError(f"unsupported interval operation {op!r}")


def rat_arith(a: RatLike, b: RatLike, op: str) -> Fraction:
    """Named-operation entry point for {+, -, *, /} on exact rationals."""
    a, b = rat(a), rat(b)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    raise ValueError(f"unsupported rational operation {op!r}")


def _sqrt_point(x: Fraction, eps: Fraction) -> Interval:
    """Enclosure of sqrt(x) of width <= eps; exact for perfect squares."""
    if x < 0:
        raise ValueError("square root of a negative rational")
    if x == 0:
        return Interval.point(0)
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Interval.point(Fraction(rn, rd))
    # Scale so one integer sqrt pins sqrt(x) between r/M and (r+1)/M,
    # with 1/M <= eps.  isqrt gives r^2 <= x*M^2 < (r+1)^2 exactly.
    inv = 1 / eps
    p = max(1, (inv.numerator // inv.denominator).bit_length() + 1)
    M = 1 << p
    f = (x.numerator * M * M) // x.denominator
    r = math.isqrt(f)
    return Interval(Fraction(r, M), Fraction(r + 1, M))


def sqrt_enclosure(x, eps: RatLike) -> Interval:
    """Sound enclosure of sqrt over a nonnegative rational or interval.

    The returned interval always contains the true square root(s); for a
    scalar input its width is at most eps, and perfect rational squares
    come back as exact zero-width intervals.
    """
    e = rat(eps)
    if e <= 0:
        raise ValueError("eps must be positive")
    if isinstance(x, Interval):
        if x.lo < 0:
            raise ValueError("interval contains negative values")
        return Interval(_sqrt_point(x.lo, e).lo, _sqrt_point(x.hi, e).hi)
    v = rat(x)
    return _sqrt_point(v, e)
