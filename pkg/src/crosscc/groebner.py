"""Buchberger's algorithm: reduction, reduced bases, leading-term and
elimination ideals.

The core loop works on integer-coefficient term dicts (content stripped,
positive leading coefficient) with monomials packed into single ints,
Gebauer-Moeller pair pruning, sugar-ordered pair selection, and
top-reduction during the pair loop (full tail reduction only happens in
the final inter-reduction), which together keep the larger runs feasible.
Resource limits are first class: exceeding them raises InconclusiveError
rather than returning a possibly-wrong basis.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .mpoly import (
    Monomial,
    MPoly,
    RingMismatchError,
    VarTable,
    mon_div,
    mon_divides,
    mon_lcm,
    mon_mul,
    parse_poly,
)
from .orders import MonomialOrder

ITerms = Dict[Monomial, int]


class InconclusiveError(RuntimeError):
    """A computation hit its resource limits; no verdict is implied."""

    def __init__(self, message: str, stats: Optional["GBStats"] = None):
        super().__init__(message)
        self.stats = stats


@dataclass
class GBOptions:
    max_pairs: Optional[int] = None
    max_seconds: Optional[float] = None
    max_degree: Optional[int] = None


@dataclass
class GBStats:
    pairs_processed: int = 0
    max_degree_seen: int = 0
    elapsed_seconds: float = 0.0
    basis_size: int = 0

    def as_dict(self):
        return {
            "pairs_processed": self.pairs_processed,
            "max_degree_seen": self.max_degree_seen,
            "elapsed_seconds": round(self.elapsed_seconds, 3),
            "basis_size": self.basis_size,
        }


# ---------------------------------------------------------------------------
# integer-coefficient core
# ---------------------------------------------------------------------------

def _to_int_terms(f: MPoly) -> ITerms:
    """Integer-primitive copy of the term dict (positive content cleared)."""
    if f.is_zero():
        return {}
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {m: int(c * den) for m, c in f.terms.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, abs(v))
    return {m: v // g for m, v in ints.items()}


def _strip_content(terms: ITerms) -> ITerms:
    g = 0
    for v in terms.values():
        g = gcd(g, abs(v))
        if g == 1:
            return terms
    if g in (0, 1):
        return terms
    return {m: v // g for m, v in terms.items()}


def _make_positive(terms: ITerms, key) -> ITerms:
    if not terms:
        return terms
    lm = max(terms, key=key)
    if terms[lm] < 0:
        return {m: -v for m, v in terms.items()}
    return terms


class _MaxFirst:
    """Inverts comparison so heapq yields the order-largest monomial first."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k


class _Pack:
    """Packed-exponent monomials for the Buchberger inner loops.

    Each exponent lives in a 16-bit field of a single integer, so monomial
    multiplication is integer addition, exact division is subtraction, and
    divisibility is one subtract-and-mask (a reserved guard bit per field
    catches any borrow).  For graded orders the comparison key is a single
    integer as well: total degree in the top bits, the complemented field
    block below it (which is exactly revlex on the reversed variables).
    """

    BITS = 16
    MAXE = (1 << 12) - 1     # leaves room for guard bits under field sums

    def __init__(self, order: MonomialOrder):
        n, b = order.nvars, self.BITS
        self.n = n
        self.b = b
        self.kind = order.kind
        self.elim = order.elim_count
        self.fmask = (1 << b) - 1
        self.full = (1 << (n * b)) - 1
        self.ones = sum(1 << (i * b) for i in range(n))
        self.guards = sum(1 << (i * b + b - 1) for i in range(n))
        self.degsh = (n - 1) * b
        self._keys: Dict[int, object] = {}   # lex/block keys only

    def pack(self, m: Monomial) -> int:
        b = self.b
        val = 0
        for i, e in enumerate(m):
            if e > self.MAXE:
                raise ValueError("exponent too large for packed monomials")
            val |= e << (i * b)
        return val

    def unpack(self, p: int) -> Monomial:
        b, fm = self.b, self.fmask
        return tuple((p >> (i * b)) & fm for i in range(self.n))

    def deg(self, p: int) -> int:
        # SWAR field sum: the middle field of p * (1,1,...,1) holds it
        return ((p * self.ones) >> self.degsh) & self.fmask

    def key(self, p: int):
        if self.kind == "degrevlex":
            return (self.deg(p) << (self.n * self.b)) | (self.full - p)
        k = self._keys.get(p)
        if k is None:
            m = self.unpack(p)
            n, b = self.n, self.b
            if self.kind == "lex":
                k = sum(e << ((n - 1 - i) * b) for i, e in enumerate(m))
            else:
                c = self.elim
                head = sum(e << ((c - 1 - i) * b) for i, e in enumerate(m[:c]))
                q = p >> (c * b)
                fulltail = (1 << ((n - c) * b)) - 1
                k = (head, (sum(m[c:]) << ((n - c) * b)) | (fulltail - q))
            self._keys[p] = k
        return k

    def negkey(self, p: int):
        k = self.key(p)
        return -k if type(k) is int else _MaxFirst(k)

    def divides(self, a: int, b: int) -> bool:
        return not ((b - a) & self.guards)

    def lcm(self, a: int, b: int) -> int:
        return self.pack(tuple(map(max, self.unpack(a), self.unpack(b))))


def _normal_form_int(
    f: ITerms, reducers: Sequence[Tuple[int, int, ITerms]], pk: _Pack,
    full: bool = True, sugar: Optional[int] = None,
    red_sugars: Optional[Sequence[int]] = None,
) -> Tuple[ITerms, int, Optional[int]]:
    """Normal form over the integers, on packed monomials.

    Returns (tail, scale, sugar) with tail == scale * f modulo the reducer
    ideal; scale is a positive integer accumulated from fraction-free
    elimination steps.  The working terms are drained through a max-heap:
    reduction only ever introduces monomials strictly below the one being
    eliminated, so a lazily-deduplicated heap visits terms in decreasing
    order without the O(terms) rescans a plain max() would cost.

    With full=False reduction stops at the first irreducible (leading)
    monomial and the remaining terms come back untouched; that is all the
    Buchberger pair loop needs, and it skips the bulk of the fill-in work.

    When a starting sugar degree is given (with the reducers' sugars in
    red_sugars) the homogenized degree is propagated through each
    elimination step and returned, for the sugar selection strategy.
    """
    h = dict(f)
    tail: ITerms = {}
    scale = 1
    guards = pk.guards
    negkey = pk.negkey
    heap = [(negkey(m), m) for m in h]
    heapq.heapify(heap)
    while heap:
        m = heapq.heappop(heap)[1]
        c = h.pop(m, None)
        if c is None:        # stale heap entry, already cancelled
            continue
        hit = hit_i = None
        for n, red in enumerate(reducers):
            if not ((m - red[0]) & guards) and (
                    hit is None or len(red[2]) < len(hit[2])):
                hit, hit_i = red, n
        if hit is None:
            tail[m] = c
            if not full:
                tail.update(h)
                break
            continue
        lm, lc, gterms = hit
        g = gcd(c, lc)
        a = abs(lc // g)
        b = c // g if lc > 0 else -(c // g)
        if a != 1:
            scale *= a
            for k in h:
                h[k] *= a
            for k in tail:
                tail[k] *= a
        shift = m - lm
        if sugar is not None:
            s = red_sugars[hit_i] + pk.deg(shift)
            if s > sugar:
                sugar = s
        for gm, gc in gterms.items():
            if gm == lm:
                continue
            t = shift + gm
            old = h.get(t)
            nv = (old if old is not None else 0) - b * gc
            if nv:
                h[t] = nv
                if old is None:
                    heapq.heappush(heap, (negkey(t), t))
            else:
                h.pop(t, None)
    return tail, scale, sugar


def _spoly_int(
    a: Tuple[int, int, ITerms], b: Tuple[int, int, ITerms], pk: _Pack
) -> ITerms:
    lma, lca, fa = a
    lmb, lcb, fb = b
    l = pk.lcm(lma, lmb)
    g = gcd(lca, lcb)
    ca, cb = lcb // g, lca // g
    sa, sb = l - lma, l - lmb
    out: ITerms = {}
    for m, c in fa.items():
        t = sa + m
        out[t] = out.get(t, 0) + ca * c
    for m, c in fb.items():
        t = sb + m
        nv = out.get(t, 0) - cb * c
        if nv:
            out[t] = nv
        else:
            out.pop(t, None)
    return out


class _GBRun:
    """One Buchberger run over integer term dicts with packed monomials."""

    def __init__(self, pk: _Pack, opts: GBOptions):
        self.pk = pk
        self.key = pk.key
        self.opts = opts
        self.polys: List[ITerms] = []       # master list, never shrinks
        self.lms: List[int] = []            # packed leading monomials
        self.lcs: List[int] = []
        self.sugars: List[int] = []         # homogenized degrees, for selection
        self.alive: List[int] = []          # indices forming the current basis
        self.pairs: List[Tuple[int, int, int, int]] = []
        self.stats = GBStats()
        self.t0 = time.monotonic()

    # -- bookkeeping ---------------------------------------------------
    def _check_limits(self):
        o = self.opts
        if o.max_pairs is not None and self.stats.pairs_processed > o.max_pairs:
            raise InconclusiveError("pair limit exceeded", self._final_stats())
        if o.max_seconds is not None and time.monotonic() - self.t0 > o.max_seconds:
            raise InconclusiveError("time limit exceeded", self._final_stats())
        if o.max_degree is not None and self.stats.max_degree_seen > o.max_degree:
            raise InconclusiveError("degree limit exceeded", self._final_stats())

    def _final_stats(self) -> GBStats:
        self.stats.elapsed_seconds = time.monotonic() - self.t0
        self.stats.basis_size = len(self.alive)
        return self.stats

    def _reducers(self):
        return [(self.lms[i], self.lcs[i], self.polys[i]) for i in self.alive]

    def _alive_sugars(self):
        return [self.sugars[i] for i in self.alive]

    def _entry(self, i: int):
        return (self.lms[i], self.lcs[i], self.polys[i])

    # -- Gebauer-Moeller update -----------------------------------------
    def _update(self, h_idx: int):
        pk = self.pk
        lm_h = self.lms[h_idx]
        deg_h = pk.deg(lm_h)
        sug_h = self.sugars[h_idx]
        cand = []
        for g in self.alive:
            cand.append((g, pk.lcm(lm_h, self.lms[g])))
        kept: List[Tuple[int, int]] = []
        for n, (g1, l1) in enumerate(cand):
            coprime = l1 == lm_h + self.lms[g1]
            if coprime:
                kept.append((g1, l1))
                continue
            dominated = False
            for m2, (g2, l2) in enumerate(cand):
                if m2 == n:
                    continue
                if l2 != l1 and pk.divides(l2, l1):
                    dominated = True
                    break
                if l2 == l1 and m2 < n:
                    dominated = True
                    break
            if not dominated:
                kept.append((g1, l1))
        new_pairs = [
            (g1, h_idx, l1,
             max(self.sugars[g1] + pk.deg(l1) - pk.deg(self.lms[g1]),
                 sug_h + pk.deg(l1) - deg_h))
            for g1, l1 in kept
            if l1 != lm_h + self.lms[g1]
        ]
        surviving = []
        for p in self.pairs:
            i, j, l = p[0], p[1], p[2]
            if not pk.divides(lm_h, l):
                surviving.append(p)
            elif pk.lcm(self.lms[i], lm_h) == l or pk.lcm(self.lms[j], lm_h) == l:
                surviving.append(p)
        self.pairs = surviving + new_pairs
        self.alive = [g for g in self.alive if not pk.divides(lm_h, self.lms[g])]
        self.alive.append(h_idx)

    def _add_poly(self, terms: ITerms, sugar: int):
        terms = _make_positive(_strip_content(terms), self.key)
        lm = max(terms, key=self.key)
        self.polys.append(terms)
        self.lms.append(lm)
        self.lcs.append(terms[lm])
        self.sugars.append(sugar)
        deg = self.pk.deg(lm)
        if deg > self.stats.max_degree_seen:
            self.stats.max_degree_seen = deg
        self._update(len(self.polys) - 1)

    # -- main loop -------------------------------------------------------
    def run(self, gens: List[ITerms]) -> List[ITerms]:
        pk = self.pk
        # deterministic seeding order, independent of caller permutation
        gens = sorted(
            (g for g in gens if g),
            key=lambda t: (self.key(max(t, key=self.key)), len(t), sorted(t.items())),
        )
        for g in gens:
            sug0 = max(pk.deg(m) for m in g)
            nf, _, sug = _normal_form_int(
                g, self._reducers(), pk, full=False,
                sugar=sug0, red_sugars=self._alive_sugars())
            if nf:
                self._add_poly(nf, sug)
        while self.pairs:
            self._check_limits()
            best = min(
                range(len(self.pairs)),
                key=lambda n: (self.pairs[n][3], self.key(self.pairs[n][2]),
                               self.pairs[n][0], self.pairs[n][1]),
            )
            i, j, _l, sug0 = self.pairs.pop(best)
            self.stats.pairs_processed += 1
            s = _spoly_int(self._entry(i), self._entry(j), pk)
            if not s:
                continue
            nf, _, sug = _normal_form_int(
                s, self._reducers(), pk, full=False,
                sugar=sug0, red_sugars=self._alive_sugars())
            if nf:
                self._add_poly(nf, sug)
        return self._inter_reduce()

    def _inter_reduce(self) -> List[ITerms]:
        pk = self.pk
        # minimal basis: drop anything whose LT another LT divides
        alive = sorted(self.alive, key=lambda i: self.key(self.lms[i]))
        minimal: List[int] = []
        for i in alive:
            if not any(pk.divides(self.lms[j], self.lms[i]) for j in minimal):
                minimal.append(i)
        # tail-reduce each element against all the others
        reduced: List[ITerms] = []
        for i in minimal:
            others = [
                (self.lms[j], self.lcs[j], self.polys[j]) for j in minimal if j != i
            ]
            nf, _, _ = _normal_form_int(self.polys[i], others, pk)
            reduced.append(_make_positive(_strip_content(nf), self.key))
        reduced.sort(key=lambda t: self.key(max(t, key=self.key)), reverse=True)
        self._final_stats()
        return reduced


# ---------------------------------------------------------------------------
# public MPoly-level API
# ---------------------------------------------------------------------------

@dataclass
class GroebnerBasis:
    ring: VarTable
    order: MonomialOrder
    polys: List[MPoly]
    reduced: bool = True
    stats: GBStats = field(default_factory=GBStats)

    def leading_monomials(self) -> List[Monomial]:
        return [p.leading(self.order)[0] for p in self.polys]


def _from_int_terms(ring: VarTable, terms: ITerms) -> MPoly:
    out = MPoly(ring)
    out.terms = {m: Fraction(c) for m, c in terms.items()}
    return out


def _common_ring(polys: Sequence[MPoly]) -> VarTable:
    ring = polys[0].ring
    for p in polys[1:]:
        if p.ring != ring:
            raise RingMismatchError("generators live in different rings")
    return ring


def reduce(f: MPoly, basis: Sequence[MPoly], order: MonomialOrder) -> MPoly:
    """Normal form of f modulo basis: f - result lies in <basis> and no
    term of the result is divisible by any basis leading term."""
    if not basis or all(p.is_zero() for p in basis):
        return f
    if f.is_zero():
        return f
    pk = _Pack(order)
    reducers = []
    for p in basis:
        if p.is_zero():
            continue
        it = {pk.pack(m): int(c) for m, c in _to_int_terms(p).items()}
        lm = max(it, key=pk.key)
        reducers.append((lm, it[lm], it))
    packed_f = {pk.pack(m): c for m, c in _to_int_terms_scaled(f)[0].items()}
    ptail, scale, _ = _normal_form_int(packed_f, reducers, pk)
    tail = {pk.unpack(m): c for m, c in ptail.items()}
    # reconstruct the rational normal form: f was scaled by den, then by scale
    _, den = _to_int_terms_scaled(f)
    out = MPoly(f.ring)
    out.terms = {m: Fraction(c, scale * den) for m, c in tail.items()}
    return out


def _to_int_terms_scaled(f: MPoly) -> Tuple[ITerms, int]:
    """Integer term dict equal to den*f, returning (terms, den)."""
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return {m: int(c * den) for m, c in f.terms.items()}, den


def s_polynomial(f: MPoly, g: MPoly, order: MonomialOrder) -> MPoly:
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of the zero polynomial")
    lmf, lcf = f.leading(order)
    lmg, lcg = g.leading(order)
    l = mon_lcm(lmf, lmg)
    mf = MPoly(f.ring, {mon_div(l, lmf): 1 / lcf})
    mg = MPoly(g.ring, {mon_div(l, lmg): 1 / lcg})
    return mf * f - mg * g


def buchberger(
    gens: Sequence[MPoly],
    order: MonomialOrder,
    opts: Optional[GBOptions] = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of <gens>; deterministic in the generators
    as a set.  Raises InconclusiveError when resource limits are hit."""
    gens = [g for g in gens if g is not None]
    if not gens:
        raise ValueError("empty generator list")
    ring = _common_ring(gens)
    if len(ring) != order.nvars:
        raise ValueError("order arity does not match ring")
    opts = opts or GBOptions()
    nonzero = [g for g in gens if not g.is_zero()]
    if not nonzero:
        return GroebnerBasis(ring, order, [], True, GBStats())
    pk = _Pack(order)
    run = _GBRun(pk, opts)
    result = run.run([
        {pk.pack(m): c for m, c in _to_int_terms(g).items()} for g in nonzero
    ])
    polys = [
        _from_int_terms(ring, {pk.unpack(m): c for m, c in t.items()})
        for t in result
    ]
    return GroebnerBasis(ring, order, polys, True, run.stats)


def leading_terms(gb: GroebnerBasis) -> List[Monomial]:
    """Divisibility-minimal generators of the leading-term ideal."""
    mons = gb.leading_monomials()
    minimal: List[Monomial] = []
    for m in sorted(mons, key=sum):
        if not any(mon_divides(g, m) for g in minimal):
            minimal.append(m)
    return minimal


def ideal_membership(f: MPoly, gb: GroebnerBasis) -> bool:
    return reduce(f, gb.polys, gb.order).is_zero()


def elimination_ideal(
    gens: Sequence[MPoly],
    keep_last: int,
    order_hint: str = "block",
    opts: Optional[GBOptions] = None,
) -> List[MPoly]:
    """Generators of <gens> intersected with the subring of the last
    `keep_last` variables, via a block-elimination (or lex) basis."""
    ring = _common_ring(list(gens))
    n = len(ring)
    if not 0 <= keep_last < n:
        raise ValueError("keep_last must be in [0, nvars)")
    if order_hint == "lex":
        order = MonomialOrder("lex", n)
    elif order_hint == "block":
        order = MonomialOrder("block", n, n - keep_last)
    else:
        raise ValueError(f"unknown elimination order hint {order_hint!r}")
    gb = buchberger(gens, order, opts)
    cut = n - keep_last
    out = []
    for p in gb.polys:
        if all(all(e == 0 for e in m[:cut]) for m in p.terms):
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# ideal files: header "ring <names...>", one polynomial per line, # comments
# ---------------------------------------------------------------------------

def write_ideal_file(path, ring: VarTable, polys: Sequence[MPoly], comment: str = ""):
    lines = []
    if comment:
        for row in comment.splitlines():
            lines.append(f"# {row}")
    lines.append("ring " + " ".join(ring.names))
    for p in polys:
        lines.append(p.to_string())
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_ideal_file(path) -> Tuple[VarTable, List[MPoly]]:
    ring = None
    polys: List[MPoly] = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if ring is None:
                if not line.startswith("ring "):
                    raise ValueError("ideal file must start with a 'ring' header line")
                ring = VarTable(line.split()[1:])
                continue
            polys.append(parse_poly(line, ring))
    if ring is None:
        raise ValueError("missing ring header")
    return ring, polys
