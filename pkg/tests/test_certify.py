import json
import random
from fractions import Fraction

import pytest

from crosscc.certify import (
    CERTIFIED,
    FALSIFIED,
    INCONCLUSIVE,
    AlgebraicPointSpec,
    Certificate,
    extension_step,
    mvt_sign_bound,
    sign_at_point,
)
from crosscc.mpoly import MPoly, VarTable, parse_poly
from crosscc.rationals import Interval, rat, sqrt_enclosure
from crosscc.univar import UPoly


def sqrt2_point(extra=()):
    return AlgebraicPointSpec("x", UPoly([-2, 0, 1]), Interval(1, 2), list(extra))


def test_point_requires_isolation():
    with pytest.raises(ValueError):
        AlgebraicPointSpec("x", UPoly.from_roots([1, 2]), Interval(0, 3))


def test_point_box_and_refine():
    p = sqrt2_point()
    box = p.box(rat("1/1000000"))
    assert box["x"].width <= rat("1/1000000")
    assert box["x"].lo ** 2 <= 2 <= box["x"].hi ** 2


def test_sign_at_point_certifies_nonzero():
    ring = VarTable(["x"])
    p = sqrt2_point()
    cert = sign_at_point(parse_poly("x^2 - 3", ring), p)
    assert cert.certified and cert.sign == -1
    cert = sign_at_point(parse_poly("x - 1", ring), p)
    assert cert.certified and cert.sign == 1


def test_sign_at_point_cannot_certify_exact_zero():
    ring = VarTable(["x"])
    p = sqrt2_point()
    cert = sign_at_point(parse_poly("x^2 - 2", ring), p)
    assert cert.status == INCONCLUSIVE
    assert cert.enclosure("value").contains(0)


def test_sign_at_point_uncovered_variable():
    ring = VarTable(["x", "y"])
    with pytest.raises(KeyError):
        sign_at_point(parse_poly("y", ring), sqrt2_point())


def test_sign_at_point_derived_coordinates():
    ring = VarTable(["x", "s"])
    # s = sqrt(x): at x = sqrt(2), s^4 - 2 = 0 is undecidable, s^4 - 3 < 0
    p = sqrt2_point([("s", lambda iv, eps: sqrt_enclosure(iv, eps))])
    assert sign_at_point(parse_poly("s^4 - 3", ring), p).sign == -1
    assert sign_at_point(parse_poly("s^4 - 2", ring), p).status == INCONCLUSIVE


def test_sign_soundness_synthetic():
    # known algebraic values: quadratic roots sqrt(n) for square-free n
    ring = VarTable(["x"])
    rng = random.Random(71)
    for _ in range(100):
        n = rng.choice([2, 3, 5, 6, 7, 10])
        lo = int(n**0.5)
        p = AlgebraicPointSpec("x", UPoly([-n, 0, 1]), Interval(lo, lo + 1))
        c = Fraction(rng.randint(-40, 40), rng.randint(1, 7))
        cert = sign_at_point(parse_poly(f"x^2 - ({c})", ring), p)
        true_sign = (n > c) - (n < c)
        if cert.certified:
            assert cert.sign == true_sign
        else:
            assert true_sign == 0


def test_refinement_never_flips_verdict():
    ring = VarTable(["x"])
    p = sqrt2_point()
    coarse = sign_at_point(parse_poly("x - 7/5", ring), p,
                           schedule=(rat(1), rat("1/100000")))
    fine = sign_at_point(parse_poly("x - 7/5", ring), p,
                         schedule=(rat("1/10000000000"),))
    if coarse.certified:
        assert fine.certified and fine.sign == coarse.sign


def test_mvt_constant():
    cert = mvt_sign_bound(Interval(0, 0), 0, 1, rat("1/2"))
    assert cert.certified and cert.sign == 1
    cert = mvt_sign_bound(Interval(0, 0), 0, 1, 0)
    assert cert.status == INCONCLUSIVE


def test_mvt_bound_exceeds_value():
    # alpha = x: derivative 1, radius 1 gives bound 1 > 0.5
    cert = mvt_sign_bound(UPoly([1]), 0, 1, rat("1/2"))
    assert cert.status == INCONCLUSIVE


def test_mvt_certifies_with_small_radius():
    cert = mvt_sign_bound(UPoly([0, 2]), rat("1/2"), rat("1/100"), rat("-1/4"))
    assert cert.certified and cert.sign == -1


def test_extension_linear():
    ring = VarTable(["m", "x"])
    gen = parse_poly("m - 7/2", ring)
    cert = extension_step([gen], "m", sqrt2_point())
    assert cert.certified
    assert cert.enclosure("m").contains(rat("7/2"))


def test_extension_vanishing_leading_coefficient():
    ring = VarTable(["m", "x"])
    # leading coefficient x^2 - 2 is exactly zero at the point
    gen = parse_poly("(x^2 - 2)*m + 1", ring)
    cert = extension_step([gen], "m", sqrt2_point())
    assert cert.status == INCONCLUSIVE


def test_extension_residual_contains_zero():
    ring = VarTable(["m", "x"])
    gens = [parse_poly("x*m - 3", ring)]
    p = sqrt2_point()
    cert = extension_step(gens, "m", p)
    assert cert.certified
    box = dict(p.box(cert.eps_used), m=cert.enclosure("m"))
    assert gens[0].evaluate_interval(box).contains(0)


def test_certificate_json():
    cert = Certificate("demo", CERTIFIED, 1,
                       [("value", Interval(rat("1/3"), rat("1/2")))],
                       rat("1/100"), 1.5, {"note": "x"})
    data = json.loads(cert.to_json())
    assert data["status"] == CERTIFIED
    assert data["enclosures"][0]["lo"] == "1/3"
    assert data["enclosures"][0]["lo_decimal"].startswith("0.333333")
    assert data["eps_used"] == "1/100"


def test_certificate_status_values():
    assert {CERTIFIED, FALSIFIED, INCONCLUSIVE} == {
        "certified", "falsified", "inconclusive"}
