"""Constructors for the cross-configuration polynomial systems.

Every polynomial that exists in two independent forms (a literal
transcription and a re-derivation from the distance-cleared force-balance
equations) is built both ways and the two are required to agree up to a
product of factors known to be nonvanishing on the working domain.  A
mismatch raises immediately: this is the module's typo trap.

Conventions.  S{a}{b}5 stands for r_ab^-3 - r_b5^-3 and S{a}65 for
r_a5^-3 - r_56^-3; the triangle-area quantities that originally multiply
the force-balance equations are already eliminated via their proportional
distance expressions, and the common factor r_56 is divided out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .groebner import write_ideal_file
from .mpoly import (
    MPoly,
    PolyMatrix,
    VarTable,
    divides,
    exact_div,
    parse_poly,
    poly_det,
    substitute_rational,
)
from .rationals import Interval, RatLike, rat, sqrt_enclosure

# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------

S_NAMES: Tuple[str, ...] = tuple(
    f"S{a}{b}5" for a in (1, 2, 3, 4) for b in [x for x in (1, 2, 3, 4) if x != a] + [6]
)
R_NAMES: Tuple[str, ...] = (
    "R12", "R13", "R14", "R15", "R23", "R24", "R25", "R34", "R35", "R45", "R56",
)
M_NAMES: Tuple[str, ...] = ("M1", "M2", "M3", "M4", "M5")

_RING_CACHE: Dict[str, VarTable] = {}


def ring32() -> VarTable:
    if "ring32" not in _RING_CACHE:
        _RING_CACHE["ring32"] = VarTable(list(S_NAMES + R_NAMES + M_NAMES))
    return _RING_CACHE["ring32"]


def ring_distances() -> VarTable:
    if "r11" not in _RING_CACHE:
        _RING_CACHE["r11"] = VarTable(list(R_NAMES))
    return _RING_CACHE["r11"]


def ring_example() -> VarTable:
    # elimination ring: the three variables to eliminate come first
    if "ex4" not in _RING_CACHE:
        _RING_CACHE["ex4"] = VarTable(["M5", "R15", "R25", "R12"])
    return _RING_CACHE["ex4"]


def ring_vortex() -> VarTable:
    if "vortex" not in _RING_CACHE:
        _RING_CACHE["vortex"] = VarTable(["G5", "R23"])
    return _RING_CACHE["vortex"]


def _dname(i: int, j: int) -> str:
    i, j = min(i, j), max(i, j)
    return f"R{i}{j}"


# ---------------------------------------------------------------------------
# generator transcriptions
# ---------------------------------------------------------------------------

SHAPE_STRINGS: Tuple[str, ...] = (
    "R12 + R23 - R13",
    "R12 + R24 - R14",
    "R13 + R34 - R14",
    "R23 + R34 - R24",
    "4*R15^2 - R56^2 - 4*(R14 - 1)^2",
    "4*R25^2 - R56^2 - 4*(1 - R24)^2",
    "4*R35^2 - R56^2 - 4*(1 - R34)^2",
    "4*R45^2 - R56^2 - 4",
)

MASS_BALANCE_STRINGS: Tuple[str, ...] = (
    "M2*S125*R12 + M3*S135*R13 + M4*S145*R14 + 2*M5*S165*(R14 - 1)",
    "-M1*S215*R12 + M3*S235*R23 + M4*S245*R24 - 2*M5*S265*(1 - R24)",
    "-M1*S315*R13 - M2*S325*R23 + M4*S345*R34 - 2*M5*S365*(1 - R34)",
    "-M1*S415*R14 - M2*S425*R24 - M3*S435*R34 - 2*M5*S465",
)


def build_shape_ideal() -> List[MPoly]:
    """The eight distance-shape constraints in the 11 distance variables."""
    ring = ring_distances()
    return [parse_poly(s, ring) for s in SHAPE_STRINGS]


def build_omega_generators() -> List[MPoly]:
    """All 28 generators of the full 32-variable system: 12 cleared
    S-definition polynomials between collinear bodies, 4 against the axis
    pair, 8 shape constraints, 4 mass-balance equations."""
    ring = ring32()
    gens: List[MPoly] = []
    for a in (1, 2, 3, 4):
        for b in (x for x in (1, 2, 3, 4) if x != a):
            rab = MPoly.var(ring, _dname(a, b)) ** 3
            rb5 = MPoly.var(ring, _dname(b, 5)) ** 3
            s = MPoly.var(ring, f"S{a}{b}5")
            gens.append(rab * rb5 * s + rab - rb5)
    for a in (1, 2, 3, 4):
        ra5 = MPoly.var(ring, _dname(a, 5)) ** 3
        r56 = MPoly.var(ring, "R56") ** 3
        s = MPoly.var(ring, f"S{a}65")
        gens.append(ra5 * r56 * s + ra5 - r56)
    gens.extend(parse_poly(s, ring) for s in SHAPE_STRINGS)
    gens.extend(parse_poly(s, ring) for s in MASS_BALANCE_STRINGS)
    return gens


def s_substitution_rules(ring: Optional[VarTable] = None) -> Dict[str, Tuple[MPoly, MPoly]]:
    """Rational rules sending each S variable to its distance expression."""
    ring = ring or ring32()
    rules: Dict[str, Tuple[MPoly, MPoly]] = {}
    for a in (1, 2, 3, 4):
        for b in (x for x in (1, 2, 3, 4) if x != a):
            rab = MPoly.var(ring, _dname(a, b)) ** 3
            rb5 = MPoly.var(ring, _dname(b, 5)) ** 3
            rules[f"S{a}{b}5"] = (rb5 - rab, rab * rb5)
        ra5 = MPoly.var(ring, _dname(a, 5)) ** 3
        r56 = MPoly.var(ring, "R56") ** 3
        rules[f"S{a}65"] = (r56 - ra5, ra5 * r56)
    return rules


# ---------------------------------------------------------------------------
# mass Jacobian, its 3x3 minors, and the 4x4 rank witness
# ---------------------------------------------------------------------------

def mass_jacobian() -> PolyMatrix:
    """5x4 matrix of partial derivatives of the four mass-balance
    polynomials with respect to the five mass variables."""
    ring = ring32()
    ls = [parse_poly(s, ring) for s in MASS_BALANCE_STRINGS]
    return PolyMatrix([[l.diff(m) for l in ls] for m in M_NAMES])


def build_minor_generators() -> List[MPoly]:
    """The 40 order-3 minors of the mass Jacobian, pushed to the distance
    ring by the S substitution, denominator-cleared, monomial content
    stripped, sign-normalized."""
    jac = mass_jacobian()
    rules = s_substitution_rules()
    target = ring_distances()
    out: List[MPoly] = []
    for rows in combinations(range(5), 3):
        for cols in combinations(range(4), 3):
            minor = poly_det(jac.submatrix(rows, cols))
            num, _den = substitute_rational(minor, rules)
            num = num.strip_monomial_content().primitive()
            out.append(num.project(target))
    return out


# the display order of the rank-witness submatrix fixes beta's sign
_A_ROWS: Tuple[Tuple[Tuple[int, str, str], ...], ...] = (
    ((0, "", ""), (-1, "S215", "R12"), (-1, "S315", "R13"), (1, "S415", "R14")),
    ((1, "S125", "R12"), (0, "", ""), (-1, "S325", "R23"), (1, "S425", "R24")),
    ((1, "S135", "R13"), (1, "S235", "R23"), (0, "", ""), (1, "S435", "R34")),
    ((1, "S145", "R14"), (1, "S245", "R24"), (1, "S345", "R34"), (0, "", "")),
)

BETA_DENOMINATOR_STRING = (
    "R12^4*R13^4*R14^4*R15^3*R23^4*R24^4*R25^3*R34^4*R35^3*R45^3"
)


def _rank_witness_matrix() -> PolyMatrix:
    ring = ring32()
    rows = []
    for spec in _A_ROWS:
        row = []
        for sign, sname, rname in spec:
            if sign == 0:
                row.append(MPoly.zero(ring))
            else:
                e = MPoly.var(ring, sname) * MPoly.var(ring, rname)
                row.append(e if sign > 0 else -e)
        rows.append(row)
    return PolyMatrix(rows)


def build_beta() -> Tuple[MPoly, MPoly]:
    """Numerator and denominator-monomial of the determinant of the 4x4
    rank-witness submatrix, as rational functions of the distances.

    The returned numerator is exactly det * denominator; the denominator
    is asserted to be the expected distance monomial.  As a cross-check
    the determinant must be the negative of the corresponding minor of
    the derived mass Jacobian (the witness fixes the opposite sign on its
    last column).
    """
    ring = ring32()
    a = _rank_witness_matrix()
    det = poly_det(a)
    jac4 = poly_det(mass_jacobian().submatrix(range(4), range(4)))
    if det + jac4 != MPoly.zero(ring):
        raise ValueError("rank-witness determinant inconsistent with the Jacobian")
    num, den = substitute_rational(det, s_substitution_rules())
    # cancel shared monomial content between numerator and denominator
    mc_num = num.monomial_content()
    mc_den = den.monomial_content()
    shared = tuple(min(x, y) for x, y in zip(mc_num, mc_den))
    if any(shared):
        strip = MPoly(ring, {shared: 1})
        num = exact_div(num, strip)
        den = exact_div(den, strip)
    c = den.terms[den.leading()[0]]
    if c != 1:
        den = den * MPoly.const(ring, 1 / c)
        num = num * MPoly.const(ring, 1 / c)
    expected = parse_poly(BETA_DENOMINATOR_STRING, ring)
    if den != expected:
        raise ValueError("beta denominator does not match the expected monomial")
    target = ring_distances()
    return num.project(target), den.project(target)


# ---------------------------------------------------------------------------
# fraction-of-polynomial helpers for the derivation cross-checks
# ---------------------------------------------------------------------------

Frac = Tuple[MPoly, MPoly]


def _fr(num: MPoly, den: Optional[MPoly] = None) -> Frac:
    return (num, den if den is not None else MPoly.const(num.ring, 1))


def _fr_add(a: Frac, b: Frac) -> Frac:
    return (a[0] * b[1] + b[0] * a[1], a[1] * b[1])


def _fr_mul(a: Frac, b: Frac) -> Frac:
    return (a[0] * b[0], a[1] * b[1])


def _fr_neg(a: Frac) -> Frac:
    return (-a[0], a[1])


def _fr_inv(a: Frac) -> Frac:
    if a[0].is_zero():
        raise ZeroDivisionError("inverting a zero fraction")
    return (a[1], a[0])


def _fr_sum(terms: Sequence[Frac]) -> Frac:
    acc = terms[0]
    for t in terms[1:]:
        acc = _fr_add(acc, t)
    return acc


def _match_up_to_allowed(derived: MPoly, transcribed: MPoly, allowed: Sequence[MPoly]) -> Fraction:
    """Require derived == c * (product of allowed factors) * transcribed
    with c a nonzero rational; return c's absolute value is not needed,
    the signed constant is returned.  Raises ValueError on any mismatch.
    """
    d = derived.strip_monomial_content()
    q = exact_div(d, transcribed).strip_monomial_content()
    changed = True
    while changed and not q.is_constant():
        changed = False
        for f in allowed:
            while divides(f, q):
                q = exact_div(q, f)
                changed = True
    if not q.is_constant():
        raise ValueError(
            "derivation/transcription mismatch: residual cofactor "
            f"{q.to_string()} is not a product of admissible factors"
        )
    c = q.constant_value()
    if c == 0:
        raise ValueError("derivation collapsed to zero")
    return c


# ---------------------------------------------------------------------------
# six-body example system
# ---------------------------------------------------------------------------

EXAMPLE_F1 = "R25^2 - 2*(1 - R12)^2"
EXAMPLE_F2 = "R15^2 - 1 - (1 - R12)^2"
EXAMPLE_F3 = (
    "R12^7*R15^3*R25^3 - 7*R12^6*R15^3*R25^3 + 8*M5*R12^7*R25^3"
    " + M5*R12^4*R15^3*R25^3 + 27*R12^5*R15^3*R25^3 - 8*R12^7*R15^3"
    " - 56*M5*R12^6*R25^3 - 8*R12^7*R25^3 - 4*M5*R12^3*R15^3*R25^3"
    " - 65*R12^4*R15^3*R25^3 + 56*R12^6*R15^3 + 152*M5*R12^5*R25^3"
    " + 56*R12^6*R25^3 + 4*M5*R12^2*R15^3*R25^3 + 104*R12^3*R15^3*R25^3"
    " - 152*R12^5*R15^3 - 200*M5*R12^4*R25^3 - 152*R12^5*R25^3"
    " - 108*R12^2*R15^3*R25^3 + 200*R12^4*R15^3 + 128*M5*R12^3*R25^3"
    " + 200*R12^4*R25^3 + 64*R12*R15^3*R25^3 - 128*R12^3*R15^3"
    " - 32*M5*R12^2*R25^3 - 128*R12^3*R25^3 - 16*R15^3*R25^3"
    " + 32*R12^2*R15^3 + 32*R12^2*R25^3"
)
EXAMPLE_F4 = (
    "-8*M5*R12^7*R15^3 - M5*R12^4*R15^3*R25^3 + 56*M5*R12^6*R15^3"
    " + 8*R12^7*R15^3 + 8*R12^7*R25^3 + 4*M5*R12^3*R15^3*R25^3"
    " + R12^4*R15^3*R25^3 - 152*M5*R12^5*R15^3 - 56*R12^6*R15^3"
    " - 56*R12^6*R25^3 - 4*M5*R12^2*R15^3*R25^3 + 12*R12^3*R15^3*R25^3"
    " + 200*M5*R12^4*R15^3 + 152*R12^5*R15^3 + 152*R12^5*R25^3"
    " - 44*R12^2*R15^3*R25^3 - 128*M5*R12^3*R15^3 - 200*R12^4*R15^3"
    " - 200*R12^4*R25^3 + 48*R12*R15^3*R25^3 + 32*M5*R12^2*R15^3"
    " + 128*R12^3*R15^3 + 128*R12^3*R25^3 - 16*R15^3*R25^3"
    " - 32*R12^2*R15^3 - 32*R12^2*R25^3"
)

EXAMPLE_LC1 = (
    "8*R12^7*R25^3 - 56*R12^6*R25^3 + 152*R12^5*R25^3 + R12^4*R15^3*R25^3"
    " - 200*R12^4*R25^3 - 4*R12^3*R15^3*R25^3 + 128*R12^3*R25^3"
    " + 4*R12^2*R15^3*R25^3 - 32*R12^2*R25^3"
)
EXAMPLE_LC2 = (
    "-8*R12^7*R15^3 + 56*R12^6*R15^3 - 152*R12^5*R15^3 - R12^4*R15^3*R25^3"
    " + 200*R12^4*R15^3 + 4*R12^3*R15^3*R25^3 - 128*R12^3*R15^3"
    " - 4*R12^2*R15^3*R25^3 + 32*R12^2*R15^3"
)


def _example_balance_fractions() -> Tuple[Frac, Frac]:
    """The first and second axis-balance equations of the symmetric
    example family (unit masses except the fifth), as exact rational
    functions of M5, R15, R25, R12."""
    ring = ring_example()
    p = lambda s: parse_poly(s, ring)
    one = MPoly.const(ring, 1)
    cube = lambda q: q ** 3
    r12c, r15c, r25c = cube(p("R12")), cube(p("R15")), cube(p("R25"))
    r13c, r56c = cube(p("2 - R12")), cube(p("2 - 2*R12"))
    m5 = p("M5")
    s125: Frac = (r25c - r12c, r12c * r25c)
    s135: Frac = (r25c - r13c, r13c * r25c)
    s145: Frac = (r15c - MPoly.const(ring, 8), MPoly.const(ring, 8) * r15c)
    s165: Frac = (r56c - r15c, r15c * r56c)
    l15 = _fr_sum([
        _fr_mul(s125, _fr(p("R12"))),
        _fr_mul(s135, _fr(p("2 - R12"))),
        _fr_mul(s145, _fr(MPoly.const(ring, 2))),
        _fr_mul(_fr(2 * m5), s165),          # times (r14 - 1) = 1
    ])
    s215: Frac = (r15c - r12c, r12c * r15c)
    s235: Frac = (r25c - r56c, r56c * r25c)  # r23 = r56 = 2 - 2 R12
    s245: Frac = (r15c - r13c, r13c * r15c)  # r24 = r13 = 2 - R12
    s265: Frac = (r56c - r25c, r25c * r56c)
    l25 = _fr_sum([
        _fr_neg(_fr_mul(s215, _fr(p("R12")))),
        _fr_mul(s235, _fr(p("2 - 2*R12"))),
        _fr_mul(s245, _fr(p("2 - R12"))),
        _fr_mul(_fr(-2 * m5), _fr_mul(s265, _fr(p("1 - (2 - R12)")))),
    ])
    return l15, l25


def build_example_ideal_6bp() -> List[MPoly]:
    """The four generators of the symmetric six-body example in
    [M5, R15, R25, R12]; the two denominator-cleared balance equations are
    re-derived independently and must match their transcriptions up to
    factors nonvanishing on 0 < r12 < 1."""
    ring = ring_example()
    f1 = parse_poly(EXAMPLE_F1, ring)
    f2 = parse_poly(EXAMPLE_F2, ring)
    f3 = parse_poly(EXAMPLE_F3, ring)
    f4 = parse_poly(EXAMPLE_F4, ring)
    allowed = [parse_poly(s, ring) for s in ("2 - R12", "1 - R12")]
    l15, l25 = _example_balance_fractions()
    _match_up_to_allowed(l15[0], f3, allowed)
    _match_up_to_allowed(l25[0], f4, allowed)
    # the transcribed leading coefficients must be the actual ones
    if f3.coefficients_in("M5")[1] != parse_poly(EXAMPLE_LC1, ring):
        raise ValueError("first leading coefficient mismatch")
    if f4.coefficients_in("M5")[1] != parse_poly(EXAMPLE_LC2, ring):
        raise ValueError("second leading coefficient mismatch")
    return [f1, f2, f3, f4]


def example_leading_coefficients() -> Tuple[MPoly, MPoly]:
    ring = ring_example()
    return parse_poly(EXAMPLE_LC1, ring), parse_poly(EXAMPLE_LC2, ring)


# ---------------------------------------------------------------------------
# vortex systems
# ---------------------------------------------------------------------------

VORTEX_FV1 = "-16 - 32*R23^2 + R23^4 + (16 - R23^4)*G5"
VORTEX_FV2 = "128 - 16*R23^2 - 40*R23^4 + R23^6 + (64 - 64*R23^2 + 12*R23^4)*G5"
VORTEX_FV3 = "768 + 384*R23^2 - 576*R23^4 - 24*R23^6 + R23^8"
VORTEX_FV4 = "832 - 656*R23^2 - 20*R23^4 + R23^6"


def _vortex_sq(ring: VarTable) -> Dict[str, Frac]:
    """Squared distances of the vortex family as rational functions of R23."""
    p = lambda s: parse_poly(s, ring)
    c = lambda v: MPoly.const(ring, v)
    return {
        "r12": (p("(2 - R23)^2"), c(4)),
        "r13": (p("(2 + R23)^2"), c(4)),
        "r14": (c(4), c(1)),
        "r15": (p("R23^2 + 4"), c(4)),
        "r23": (p("R23^2"), c(1)),
        "r24": (p("(2 + R23)^2"), c(4)),
        "r25": (p("R23^2"), c(2)),
        "r34": (p("(2 - R23)^2"), c(4)),
        "r35": (p("R23^2"), c(2)),
        "r45": (p("R23^2 + 4"), c(4)),
        "r56": (p("R23^2"), c(1)),
    }


def _vortex_balance_fractions() -> Tuple[Frac, Frac]:
    """First and third axis-balance equations of the vortex family with
    unit strengths except the fifth; only squared distances enter, so the
    whole derivation is rational in R23.

    The linear distance factors multiplying each term are halved family
    expressions (e.g. r12 = (2 - R23)/2), kept as exact fractions.
    """
    ring = ring_vortex()
    p = lambda s: parse_poly(s, ring)
    c = lambda v: MPoly.const(ring, v)
    sq = _vortex_sq(ring)
    v = lambda a, b: _fr_add(_fr_inv(sq[a]), _fr_neg(_fr_inv(sq[b])))
    g5 = _fr(p("G5"))
    r12 = (p("2 - R23"), c(2))
    r13 = (p("2 + R23"), c(2))
    lv15 = _fr_sum([
        _fr_mul(v("r12", "r25"), r12),
        _fr_mul(v("r13", "r35"), r13),
        _fr_mul(v("r14", "r45"), _fr(c(2))),
        _fr_mul(_fr_mul(_fr(c(2)), g5), v("r15", "r56")),   # (r14 - 1) = 1
    ])
    r34 = r12
    lv35 = _fr_sum([
        _fr_neg(_fr_mul(v("r13", "r15"), r13)),
        _fr_neg(_fr_mul(v("r23", "r25"), _fr(p("R23")))),
        _fr_mul(v("r34", "r45"), r34),
        _fr_neg(_fr_mul(_fr_mul(_fr(c(2)), g5), _fr_mul(v("r35", "r56"), (p("R23"), c(2))))),
    ])
    return lv15, lv35


def build_vortex_systems() -> Dict[str, MPoly]:
    """Transcribed vortex polynomials with derivation cross-checks: the
    linear-in-strength pair, the eliminant of their resultant, and the
    rank-witness factor."""
    ring = ring_vortex()
    fv = {name: parse_poly(text, ring) for name, text in
          [("FV1", VORTEX_FV1), ("FV2", VORTEX_FV2),
           ("FV3", VORTEX_FV3), ("FV4", VORTEX_FV4)]}
    allowed = [parse_poly(s, ring) for s in ("2 - R23", "2 + R23", "R23^2 + 4")]
    lv15, lv35 = _vortex_balance_fractions()
    _match_up_to_allowed(lv15[0], fv["FV2"], allowed)
    _match_up_to_allowed(lv35[0], fv["FV1"], allowed)
    return fv


def vortex_rank_witness_numerator() -> Tuple[MPoly, MPoly]:
    """Numerator of the determinant of the 4x4 vortex rank-witness matrix
    under the family, returned as (witness factor, cofactor): the factor
    is the transcribed sextic, and numerator == cofactor * factor."""
    ring = ring_vortex()
    p = lambda s: parse_poly(s, ring)
    c = lambda x: MPoly.const(ring, x)
    sq = _vortex_sq(ring)
    v = lambda a, b: _fr_add(_fr_inv(sq[a]), _fr_neg(_fr_inv(sq[b])))
    r12 = (p("2 - R23"), c(2))
    r13 = (p("2 + R23"), c(2))
    r14 = _fr(c(2))
    r23 = _fr(p("R23"))
    r24, r34 = r13, r12
    zero = _fr(MPoly.zero(ring))
    m = [
        [zero, _fr_neg(_fr_mul(v("r12", "r15"), r12)),
         _fr_neg(_fr_mul(v("r13", "r15"), r13)), _fr_mul(v("r14", "r15"), r14)],
        [_fr_mul(v("r12", "r25"), r12), zero,
         _fr_neg(_fr_mul(v("r23", "r25"), r23)), _fr_mul(v("r24", "r25"), r24)],
        [_fr_mul(v("r13", "r35"), r13), _fr_mul(v("r23", "r35"), r23),
         zero, _fr_mul(v("r34", "r35"), r34)],
        [_fr_mul(v("r14", "r45"), r14), _fr_mul(v("r24", "r45"), r24),
         _fr_mul(v("r34", "r45"), r34), zero],
    ]
    det = _frac_det(m)
    num = det[0].strip_monomial_content()
    fv4 = parse_poly(VORTEX_FV4, ring)
    cofactor = exact_div(num, fv4).strip_monomial_content()
    # peel off factors that cannot vanish for 0 < r23 < 2
    allowed = [parse_poly(s, ring) for s in ("2 - R23", "2 + R23", "R23^2 + 4")]
    changed = True
    while changed:
        changed = False
        for f in allowed:
            while divides(f, cofactor):
                cofactor = exact_div(cofactor, f)
                changed = True
    # sign is meaningful: every stripped factor is positive on (0, 2)
    return fv4, cofactor


def _frac_det(m: List[List[Frac]]) -> Frac:
    n = len(m)
    if n == 1:
        return m[0][0]
    acc: Optional[Frac] = None
    for j in range(n):
        if m[0][j][0].is_zero():
            continue
        sub = [[row[k] for k in range(n) if k != j] for row in m[1:]]
        term = _fr_mul(m[0][j], _frac_det(sub))
        if j % 2 == 1:
            term = _fr_neg(term)
        acc = term if acc is None else _fr_add(acc, term)
    if acc is None:
        ring = m[0][0][0].ring
        return _fr(MPoly.zero(ring))
    return acc


# ---------------------------------------------------------------------------
# configuration-level residuals
# ---------------------------------------------------------------------------

DISTANCE_KEYS: Tuple[str, ...] = (
    "r12", "r13", "r14", "r15", "r23", "r24", "r25", "r34", "r35", "r45", "r56",
)


def _as_iv(x) -> Interval:
    return x if isinstance(x, Interval) else Interval.point(rat(x))


@dataclass
class CrossConfig:
    """A concrete cross configuration: 11 mutual-distance enclosures and
    five weights (masses, or vortex strengths; the sixth equals the fifth)."""

    distances: Dict[str, Interval]
    weights: List[Interval] = field(default_factory=list)

    def __post_init__(self):
        missing = [k for k in DISTANCE_KEYS if k not in self.distances]
        if missing:
            raise ValueError(f"missing distances: {missing}")
        self.distances = {k: _as_iv(v) for k, v in self.distances.items()}
        self.weights = [_as_iv(w) for w in self.weights]
        if len(self.weights) != 5:
            raise ValueError("need exactly five weights")
        for k, iv in self.distances.items():
            if iv.lo <= 0:
                raise ValueError(f"distance {k} is not certainly positive")

    def d(self, a: int, b: int) -> Interval:
        a, b = min(a, b), max(a, b)
        return self.distances[f"r{a}{b}"]


def laura_andoyer_residuals(cfg: CrossConfig, problem: str = "newtonian") -> List[Interval]:
    """Interval enclosures of the four balance residuals of a cross
    configuration; zero must lie in every enclosure for a genuine one."""
    if problem == "newtonian":
        e = -3
    elif problem == "vortex":
        e = -2
    else:
        raise ValueError(f"unknown problem {problem!r}")
    w = cfg.weights
    one = Interval.point(1)

    def s(a: int, b: int) -> Interval:
        return cfg.d(a, b) ** e - cfg.d(b, 5) ** e

    def s6(a: int) -> Interval:
        return cfg.d(a, 5) ** e - cfg.d(5, 6) ** e

    r = cfg.d
    l1 = (w[1] * s(1, 2) * r(1, 2) + w[2] * s(1, 3) * r(1, 3)
          + w[3] * s(1, 4) * r(1, 4) + 2 * w[4] * s6(1) * (r(1, 4) - one))
    l2 = (-w[0] * s(2, 1) * r(1, 2) + w[2] * s(2, 3) * r(2, 3)
          + w[3] * s(2, 4) * r(2, 4) - 2 * w[4] * s6(2) * (one - r(2, 4)))
    l3 = (-w[0] * s(3, 1) * r(1, 3) - w[1] * s(3, 2) * r(2, 3)
          + w[3] * s(3, 4) * r(3, 4) - 2 * w[4] * s6(3) * (one - r(3, 4)))
    l4 = (-w[0] * s(4, 1) * r(1, 4) - w[1] * s(4, 2) * r(2, 4)
          - w[2] * s(4, 3) * r(3, 4) - 2 * w[4] * s6(4))
    return [l1, l2, l3, l4]


def example_config_6bp(r12: Interval, m5: Interval, eps: RatLike = "1/10000000000000000") -> CrossConfig:
    """Assemble the symmetric six-body example configuration from an
    enclosure of its free distance and of the fifth mass."""
    e = rat(eps)
    one = Interval.point(1)
    two = Interval.point(2)
    r15 = sqrt_enclosure(one + (one - r12) ** 2, e)
    r25 = sqrt_enclosure(Interval.point(2) * (one - r12) ** 2, e)
    d = {
        "r12": r12, "r13": two - r12, "r14": two, "r15": r15,
        "r23": two - 2 * r12, "r24": two - r12, "r25": r25,
        "r34": r12, "r35": r25, "r45": r15, "r56": two - 2 * r12,
    }
    return CrossConfig(d, [one, one, one, one, m5])


def vortex_config(r23: Interval, g5: Interval, eps: RatLike = "1/10000000000000000") -> CrossConfig:
    """Assemble the symmetric six-vortex example configuration from an
    enclosure of its free distance and of the fifth strength."""
    e = rat(eps)
    one = Interval.point(1)
    two = Interval.point(2)
    half = Interval.point(rat("1/2"))
    r15 = sqrt_enclosure((r23 ** 2 + Interval.point(4)) * Interval.point(rat("1/4")), e)
    r25 = sqrt_enclosure(r23 ** 2 * half, e)
    d = {
        "r12": (two - r23) * half, "r13": (two + r23) * half, "r14": two,
        "r15": r15, "r23": r23, "r24": (two + r23) * half, "r25": r25,
        "r34": (two - r23) * half, "r35": r25, "r45": r15, "r56": r23,
    }
    return CrossConfig(d, [one, one, one, one, g5])


# ---------------------------------------------------------------------------
# exports
# ---------------------------------------------------------------------------

def export_systems(directory) -> List[str]:
    """Write every constructed system to ideal files for external
    cross-checking; returns the written paths."""
    import os

    jobs = [
        ("omega.ideal", ring32(), build_omega_generators(), "32-variable system"),
        ("shape.ideal", ring_distances(), build_shape_ideal(), "shape constraints"),
        ("minors.ideal", ring_distances(), build_minor_generators(), "order-3 minors"),
        ("example6bp.ideal", ring_example(), build_example_ideal_6bp(), "six-body example"),
        ("vortex.ideal", ring_vortex(), list(build_vortex_systems().values()), "vortex systems"),
    ]
    paths = []
    for fname, ring, polys, comment in jobs:
        path = os.path.join(directory, fname)
        write_ideal_file(path, ring, polys, comment)
        paths.append(path)
    return paths
