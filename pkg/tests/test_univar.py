import random
from fractions import Fraction

import pytest

from crosscc.mpoly import VarTable, parse_poly
from crosscc.rationals import rat
from crosscc.univar import (
    SturmSequence,
    UPoly,
    count_roots,
    isolate_root,
    resultant_wrt,
    upoly_from_mpoly,
    upoly_to_mpoly,
)


def test_sturm_sequence_linear():
    seq = SturmSequence(UPoly([0, 1])).chain
    assert [q.degree for q in seq] == [1, 0]


def test_sturm_sequence_quadratic():
    seq = SturmSequence(UPoly([-2, 0, 1])).chain
    assert [q.degree for q in seq] == [2, 1, 0]
    assert seq[-1].leading() > 0  # -rem(x^2-2, x) = +2 up to positive scale


def test_sturm_zero_poly_rejected():
    with pytest.raises(ValueError):
        SturmSequence(UPoly([]))


def test_count_no_real_roots():
    assert count_roots(UPoly([1, 0, 1]), -10, 10) == 0


def test_count_factored():
    p = UPoly.from_roots([1, 2, 3])
    assert count_roots(p, 0, rat("5/2")) == 2
    assert count_roots(p, 0, 10) == 3


def test_count_half_open_convention():
    p = UPoly.from_roots([1, 2])
    assert count_roots(p, 1, 2) == 1  # root at a excluded, at b included
    assert count_roots(p, 0, 1) == 1
    assert count_roots(p, 2, 3) == 0


def test_count_multiple_roots_distinct():
    p = UPoly.from_roots([1, 1, 1, 2])
    assert count_roots(p, 0, 3) == 2


def test_count_bad_interval():
    with pytest.raises(ValueError):
        count_roots(UPoly([0, 1]), 2, 1)


def test_isolate_sqrt2():
    iv = isolate_root(UPoly([-2, 0, 1]), 1, 2, rat("1/10000000000"))
    assert iv.width <= rat("1/10000000000")
    assert iv.lo**2 <= 2 <= iv.hi**2


def test_isolate_rational_root_degenerate():
    iv = isolate_root(UPoly([rat("-1/3"), 1]), 0, 1, 1)
    assert iv.lo == iv.hi == rat("1/3")


def test_isolate_requires_unique_root():
    with pytest.raises(ValueError):
        isolate_root(UPoly.from_roots([1, 2]), 0, 3, rat("1/10"))


def test_isolate_output_contract():
    p = UPoly.from_roots([rat("1/7"), 5]) * UPoly([1, 0, 1])
    iv = isolate_root(p, 0, 1, rat("1/1000000"))
    assert count_roots(p, 0 if iv.lo == 0 else iv.lo, iv.hi) >= 1
    assert iv.contains(rat("1/7"))


def test_sturm_vs_random_factored():
    rng = random.Random(31)
    for _ in range(40):
        roots = sorted(Fraction(rng.randint(-30, 30), rng.randint(1, 9))
                       for _ in range(rng.randint(1, 5)))
        p = UPoly.from_roots(roots)
        a = Fraction(rng.randint(-40, 0), 7)
        b = Fraction(rng.randint(1, 40), 7)
        expect = len({r for r in roots if a < r <= b})
        assert count_roots(p, a, b) == expect


def test_squarefree():
    p = UPoly.from_roots([2, 2, 3])
    sf = p.squarefree()
    assert sf.degree == 2
    assert sf(2) == 0 and sf(3) == 0


def test_gcd():
    a = UPoly.from_roots([1, 2]) * 6
    b = UPoly.from_roots([2, 3]) * rat("1/5")
    g = a.gcd(b)
    assert g == UPoly([-2, 1])


def test_upoly_mpoly_round_trip():
    ring = VarTable(["t"])
    f = parse_poly("3*t^4 - t + 1/2", ring)
    u = upoly_from_mpoly(f, "t")
    assert upoly_to_mpoly(u, ring, "t") == f


# -- resultants --------------------------------------------------------------

XY = VarTable(["x", "a", "b"])


def test_resultant_linear_pair():
    f = parse_poly("x - a", XY)
    g = parse_poly("x - b", XY)
    r = resultant_wrt(f, g, "x")
    assert r in (parse_poly("a - b", XY), parse_poly("b - a", XY))


def test_resultant_common_factor_vanishes():
    h = parse_poly("x - a*b", XY)
    f = h * parse_poly("x + a", XY)
    g = h * parse_poly("x^2 + b", XY)
    assert resultant_wrt(f, g, "x").is_zero()


def test_resultant_matches_scalar_sylvester():
    import sympy

    rng = random.Random(37)
    x, a, b = sympy.symbols("x a b")
    for _ in range(10):
        fc = [rng.randint(-5, 5) for _ in range(3)]
        gc = [rng.randint(-5, 5) for _ in range(4)]
        fc[-1] = fc[-1] or 1
        gc[-1] = gc[-1] or 1
        ftxt = " + ".join(f"({c})*x^{i}" for i, c in enumerate(fc)) + " + a"
        gtxt = " + ".join(f"({c})*x^{i}" for i, c in enumerate(gc)) + " + b"
        ours = resultant_wrt(parse_poly(ftxt, XY), parse_poly(gtxt, XY), "x")
        fs = sum(c * x**i for i, c in enumerate(fc)) + a
        gs = sum(c * x**i for i, c in enumerate(gc)) + b
        theirs = sympy.resultant(fs, gs, x)
        pt = {"a": Fraction(rng.randint(-3, 3)), "b": Fraction(rng.randint(-3, 3)),
              "x": Fraction(0)}
        expect = Fraction(str(theirs.subs({a: int(pt["a"]), b: int(pt["b"])})))
        assert ours.evaluate(pt) == expect


def test_resultant_scaling_changes_by_scalar_only():
    f = parse_poly("x^2 - a", XY)
    g = parse_poly("x^3 + b*x + 1", XY)
    r1 = resultant_wrt(f, g, "x")
    r2 = resultant_wrt(f * rat("7/3"), g, "x")
    assert r2 == r1 * (rat("7/3") ** 3)


def test_resultant_degree_zero_rejected():
    with pytest.raises(ValueError):
        resultant_wrt(parse_poly("a", XY), parse_poly("x", XY), "x")
