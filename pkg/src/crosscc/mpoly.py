"""Sparse multivariate polynomials over exact rationals.

Terms live in a dict keyed by exponent tuples (length = number of ring
variables), with nonzero Fraction coefficients.  The ring is a VarTable
fixing variable names and their index order; all monomial orders compare
exponents in that fixed order.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .orders import MonomialOrder, degrevlex
from .rationals import Interval, RatLike, rat

Monomial = Tuple[int, ...]


class RingMismatchError(ValueError):
    pass


class VarTable:
    """Ordered table of variable names; the identity of a polynomial ring."""

    __slots__ = ("names", "index")

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __contains__(self, name: str):
        return name in self.index

    def __eq__(self, other):
        return isinstance(other, VarTable) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarTable({list(self.names)})"

    def default_order(self) -> MonomialOrder:
        return degrevlex(len(self.names))


def mon_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.add, a, b))

def mon_divides(a: Monomial, b: Monomial) -> bool:
    return all(map(operator.le, a, b))

def mon_div(a: Monomial, b: Monomial) -> Monomial:
    q = tuple(map(operator.sub, a, b))
    if any(e < 0 for e in q):
        raise ValueError("monomial division is not exact")
    return q

def mon_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))

def mon_deg(a: Monomial) -> int:
    return sum(a)


class MPoly:
    """Sparse multivariate polynomial with Fraction coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: VarTable, terms: Mapping[Monomial, Fraction] | None = None):
        self.ring = ring
        self.terms: Dict[Monomial, Fraction] = {}
        if terms:
            n = len(ring)
            for m, c in terms.items():
                c = rat(c)
                if c == 0:
                    continue
                if len(m) != n:
                    raise ValueError("exponent tuple length mismatch")
                self.terms[tuple(m)] = c

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(ring: VarTable) -> "MPoly":
        return MPoly(ring)

    @staticmethod
    def const(ring: VarTable, c: RatLike) -> "MPoly":
        c = rat(c)
        if c == 0:
            return MPoly(ring)
        return MPoly(ring, {(0,) * len(ring): c})

    @staticmethod
    def var(ring: VarTable, name: str, power: int = 1) -> "MPoly":
        if name not in ring:
            raise KeyError(f"unknown variable {name!r}")
        e = [0] * len(ring)
        e[ring.index[name]] = power
        return MPoly(ring, {tuple(e): Fraction(1)})

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(mon_deg(m) == 0 for m in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(mon_deg(m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index[name]
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def variables(self) -> List[str]:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return [self.ring.names[i] for i in sorted(used)]

    def num_terms(self) -> int:
        return len(self.terms)

    def leading(self, order: Optional[MonomialOrder] = None) -> Tuple[Monomial, Fraction]:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading term")
        order = order or self.ring.default_order()
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    # -- arithmetic ----------------------------------------------------
    def _check_ring(self, other: "MPoly"):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials live in different rings")

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.ring, other)
        self._check_ring(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, Fraction(0)) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        out = MPoly(self.ring)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MPoly(self.ring)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.ring, other)
        return self + (-other)

    def __rsub__(self, other):
        return MPoly.const(self.ring, other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = rat(other)
            if c == 0:
                return MPoly(self.ring)
            out = MPoly(self.ring)
            out.terms = {m: v * c for m, v in self.terms.items()}
            return out
        self._check_ring(other)
        out_terms: Dict[Monomial, Fraction] = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mon_mul(m1, m2)
                s = out_terms.get(m, Fraction(0)) + c1 * c2
                if s:
                    out_terms[m] = s
                else:
                    out_terms.pop(m, None)
        out = MPoly(self.ring)
        out.terms = out_terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = MPoly.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            if self.is_constant() or self.is_zero():
                try:
                    return self.constant_value() == rat(other)
                except TypeError:
                    return NotImplemented
            return False
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- calculus / evaluation ------------------------------------------
    def diff(self, name: str) -> "MPoly":
        if name not in self.ring:
            raise KeyError(f"unknown variable {name!r}")
        i = self.ring.index[name]
        terms: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            nm = list(m)
            nm[i] = e - 1
            terms[tuple(nm)] = c * e
        out = MPoly(self.ring)
        out.terms = terms
        return out

    def evaluate(self, point: Mapping[str, RatLike]) -> Fraction:
        values = {}
        for v in self.variables():
            if v not in point:
                raise KeyError(f"no value assigned for variable {v!r}")
            values[self.ring.index[v]] = rat(point[v])
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    term *= values[i] ** e
            total += term
        return total

    def evaluate_interval(self, box: Mapping[str, "Interval"]) -> Interval:
        """Term-wise interval evaluation; sound, not necessarily tight."""
        ivals = {}
        for v in self.variables():
            if v not in box:
                raise KeyError(f"no interval assigned for variable {v!r}")
            ivals[self.ring.index[v]] = box[v]
        total = Interval.point(0)
        for m, c in self.terms.items():
            term = Interval.point(c)
            for i, e in enumerate(m):
                if e:
                    term = term * (ivals[i] ** e)
            total = total + term
        return total

    # -- normalization --------------------------------------------------
    def content(self) -> Fraction:
        """Positive rational content (gcd of numerators / lcm of denominators)."""
        if self.is_zero():
            return Fraction(0)
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def primitive(self, order: Optional[MonomialOrder] = None) -> "MPoly":
        """Integer-primitive representative with positive leading coefficient."""
        if self.is_zero():
            return self
        cont = self.content()
        lm, lc = self.leading(order)
        if lc < 0:
            cont = -cont
        out = MPoly(self.ring)
        out.terms = {m: c / cont for m, c in self.terms.items()}
        return out

    def monomial_content(self) -> Monomial:
        """Componentwise min of exponents over all terms."""
        if self.is_zero():
            return (0,) * len(self.ring)
        it = iter(self.terms)
        acc = list(next(it))
        for m in it:
            for i, e in enumerate(m):
                if e < acc[i]:
                    acc[i] = e
        return tuple(acc)

    def strip_monomial_content(self) -> "MPoly":
        mc = self.monomial_content()
        if not any(mc):
            return self
        out = MPoly(self.ring)
        out.terms = {mon_div(m, mc): c for m, c in self.terms.items()}
        return out

    # -- structure extraction --------------------------------------------
    def coefficients_in(self, name: str) -> Dict[int, "MPoly"]:
        """View as a polynomial in `name`: map exponent -> MPoly coefficient."""
        i = self.ring.index[name]
        out: Dict[int, MPoly] = {}
        for m, c in self.terms.items():
            e = m[i]
            nm = list(m)
            nm[i] = 0
            p = out.setdefault(e, MPoly(self.ring))
            key = tuple(nm)
            s = p.terms.get(key, Fraction(0)) + c
            if s:
                p.terms[key] = s
            else:
                p.terms.pop(key, None)
        return {e: p for e, p in out.items() if not p.is_zero()}

    def project(self, new_ring: VarTable) -> "MPoly":
        """Rewrite in another ring; every used variable must exist there."""
        mapping = []
        for i, n in enumerate(self.ring.names):
            mapping.append(new_ring.index.get(n, -1))
        terms: Dict[Monomial, Fraction] = {}
        width = len(new_ring)
        for m, c in self.terms.items():
            nm = [0] * width
            for i, e in enumerate(m):
                if e:
                    j = mapping[i]
                    if j < 0:
                        raise KeyError(
                            f"variable {self.ring.names[i]!r} not present in target ring"
                        )
                    nm[j] = e
            key = tuple(nm)
            terms[key] = terms.get(key, Fraction(0)) + c
        out = MPoly(new_ring)
        out.terms = {m: c for m, c in terms.items() if c}
        return out

    # -- printing ----------------------------------------------------------
    def to_string(self, order: Optional[MonomialOrder] = None) -> str:
        if self.is_zero():
            return "0"
        order = order or self.ring.default_order()
        parts = []
        for m in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[m]
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(self.ring.names[i])
                elif e > 1:
                    factors.append(f"{self.ring.names[i]}^{e}")
            if not factors:
                body = _coeff_str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = _coeff_str(abs(c)) + "*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"MPoly({self.to_string()})"


def _coeff_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def poly_arith(f: MPoly, g: MPoly, op: str) -> MPoly:
    if op == "+":
        return f + g
    if op == "-":
        return f - g
    if op == "*":
        return f * g
    raise ValueError(f"unsupported polynomial operation {op!r}")


def exact_div(f: MPoly, g: MPoly) -> MPoly:
    """Exact quotient f/g; raises ValueError when g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return MPoly(f.ring)
    f._check_ring(g)
    order = f.ring.default_order()
    key = order.key
    glm, glc = g.leading(order)
    rem = MPoly(f.ring)
    rem.terms = dict(f.terms)
    quot = MPoly(f.ring)
    while not rem.is_zero():
        m = max(rem.terms, key=key)
        c = rem.terms[m]
        if not mon_divides(glm, m):
            raise ValueError("polynomial division is not exact")
        qm = mon_div(m, glm)
        qc = c / glc
        quot.terms[qm] = quot.terms.get(qm, Fraction(0)) + qc
        # rem -= qc * x^qm * g
        for gm, gc in g.terms.items():
            t = mon_mul(qm, gm)
            s = rem.terms.get(t, Fraction(0)) - qc * gc
            if s:
                rem.terms[t] = s
            else:
                rem.terms.pop(t, None)
    quot.terms = {m: c for m, c in quot.terms.items() if c}
    return quot


def divides(g: MPoly, f: MPoly) -> bool:
    try:
        exact_div(f, g)
        return True
    except ValueError:
        return False


def substitute_rational(
    f: MPoly, rules: Mapping[str, Tuple[MPoly, MPoly]]
) -> Tuple[MPoly, MPoly]:
    """Substitute variables by fractions num/den, clearing denominators.

    Returns (numerator, denominator) with numerator/denominator == f after
    substitution wherever the rule denominators are nonzero.  For each
    substituted variable v the denominator picks up den_v^deg_v(f), the
    minimal per-variable power.  The pair is normalized so the denominator
    is integer-primitive with positive leading coefficient; exactness of
    the quotient is preserved.
    """
    ring = f.ring
    num = f
    den = MPoly.const(ring, 1)
    for v, (rn, rd) in rules.items():
        if v not in ring:
            raise KeyError(f"unknown variable {v!r}")
        if rd.is_zero():
            raise ZeroDivisionError(f"zero denominator in rule for {v!r}")
        if rn == MPoly.var(ring, v) and rd.is_constant() and rd.constant_value() == 1:
            continue
        d = num.degree_in(v)
        if d <= 0:
            continue
        # powers of the rule pieces, computed once
        npow = [MPoly.const(ring, 1)]
        dpow = [MPoly.const(ring, 1)]
        for _ in range(d):
            npow.append(npow[-1] * rn)
            dpow.append(dpow[-1] * rd)
        i = ring.index[v]
        new_num = MPoly(ring)
        for m, c in num.terms.items():
            e = m[i]
            base = list(m)
            base[i] = 0
            mono = MPoly(ring, {tuple(base): c})
            new_num = new_num + mono * npow[e] * dpow[d - e]
        num = new_num
        den = den * dpow[d]
    # normalize: make the denominator integer-primitive, positive lc
    cont = den.content()
    lm, lc = den.leading()
    if lc < 0:
        cont = -cont
    if cont != 1:
        inv = 1 / cont
        num = num * inv
        den = den * inv
    return num, den


class PolyMatrix:
    """Rectangular grid of MPoly entries over a shared ring."""

    def __init__(self, rows: Sequence[Sequence[MPoly]]):
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        width = len(rows[0])
        ring = rows[0][0].ring
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged matrix")
            for e in r:
                if e.ring != ring:
                    raise RingMismatchError("matrix entries in different rings")
        self.rows = [list(r) for r in rows]
        self.ring = ring

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "PolyMatrix":
        return PolyMatrix(
            [[self.rows[i][j] for j in col_idx] for i in row_idx]
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]


def _det_cofactor(m: PolyMatrix) -> MPoly:
    n = m.shape[0]
    ring = m.ring
    if n == 1:
        return m.rows[0][0]

    def rec(rows: List[List[MPoly]]) -> MPoly:
        k = len(rows)
        if k == 1:
            return rows[0][0]
        if k == 2:
            return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
        total = MPoly.zero(ring)
        rest = rows[1:]
        for j in range(k):
            if rows[0][j].is_zero():
                continue
            minor = [[r[c] for c in range(k) if c != j] for r in rest]
            term = rows[0][j] * rec(minor)
            total = total + term if j % 2 == 0 else total - term
        return total

    return rec(m.rows)


def _det_bareiss(m: PolyMatrix) -> MPoly:
    n = m.shape[0]
    ring = m.ring
    a = [[e for e in row] for row in m.rows]
    sign = 1
    prev = MPoly.const(ring, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if pivot_row is None:
                return MPoly.zero(ring)
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = exact_div(num, prev) if not num.is_zero() else num
            a[i][k] = MPoly.zero(ring)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def poly_det(m: PolyMatrix) -> MPoly:
    """Exact determinant; cofactor expansion for n<=3, Bareiss for n>=4."""
    r, c = m.shape
    if r != c:
        raise ValueError("determinant of a non-square matrix")
    if r <= 3:
        return _det_cofactor(m)
    return _det_bareiss(m)


# ---------------------------------------------------------------------------
# text grammar: identifiers, integer/rational/decimal literals, + - * ^ ( )
# ---------------------------------------------------------------------------

class PolyParseError(ValueError):
    pass


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append((ch, ch))
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            seen_slash = seen_dot = False
            while j < n:
                cj = text[j]
                if cj.isdigit():
                    j += 1
                elif cj == "." and not seen_dot and not seen_slash:
                    seen_dot = True
                    j += 1
                elif cj == "/" and not seen_slash and not seen_dot and j + 1 < n and text[j + 1].isdigit():
                    seen_slash = True
                    j += 1
                else:
                    break
            tokens.append(("num", text[i:j]))
            i = j
            continue
        if ch.isalpha():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
            continue
        raise PolyParseError(f"unexpected character {ch!r} at position {i}")
    tokens.append(("end", ""))
    return tokens


class _Parser:
    def __init__(self, tokens, ring: VarTable):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise PolyParseError(f"expected {kind!r}, found {tok[1]!r}")
        return tok

    def parse_expr(self) -> MPoly:
        sign = 1
        while self.peek()[0] in ("+", "-"):
            if self.next()[0] == "-":
                sign = -sign
        result = self.parse_term() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            sign = 1 if op == "+" else -1
            while self.peek()[0] in ("+", "-"):
                if self.next()[0] == "-":
                    sign = -sign
            result = result + self.parse_term() * sign
        return result

    def parse_term(self) -> MPoly:
        result = self.parse_power()
        while self.peek()[0] == "*":
            self.next()
            result = result * self.parse_power()
        return result

    def parse_power(self) -> MPoly:
        base = self.parse_atom()
        if self.peek()[0] == "^":
            self.next()
            tok = self.expect("num")
            if not tok[1].isdigit():
                raise PolyParseError(f"exponent must be a nonnegative integer, got {tok[1]!r}")
            return base ** int(tok[1])
        return base

    def parse_atom(self) -> MPoly:
        kind, value = self.next()
        if kind == "num":
            return MPoly.const(self.ring, Fraction(value))
        if kind == "name":
            if value not in self.ring:
                raise PolyParseError(f"unknown variable {value!r}")
            return MPoly.var(self.ring, value)
        if kind == "(":
            inner = self.parse_expr()
            self.expect(")")
            return inner
        raise PolyParseError(f"unexpected token {value!r}")


def parse_poly(text: str, ring: VarTable) -> MPoly:
    parser = _Parser(_tokenize(text), ring)
    result = parser.parse_expr()
    parser.expect("end")
    return result
