import random
from fractions import Fraction

import pytest

from crosscc.groebner import (
    GBOptions,
    InconclusiveError,
    buchberger,
    elimination_ideal,
    ideal_membership,
    leading_terms,
    read_ideal_file,
    reduce,
    s_polynomial,
    write_ideal_file,
)
from crosscc.mpoly import MPoly, VarTable, parse_poly
from crosscc.orders import degrevlex, lex

XY = VarTable(["x", "y"])
XYZ = VarTable(["x", "y", "z"])


def p(text, ring=XY):
    return parse_poly(text, ring)


def rand_poly(rng, ring, terms=3, deg=3):
    out = MPoly.zero(ring)
    for _ in range(terms):
        mon = tuple(rng.randint(0, deg) for _ in ring.names)
        out = out + MPoly(ring, {mon: Fraction(rng.randint(-5, 5))})
    return out


def test_reduce_self_to_zero():
    f = p("x^2*y - 1")
    assert reduce(f, [f], lex(2)).is_zero()


def test_reduce_long_division_example():
    f = p("x^2*y - 1")
    basis = [p("x*y - 1"), p("y^2 - 1")]
    assert reduce(f, basis, lex(2)) == p("x - 1")


def test_reduce_zero_and_empty():
    assert reduce(MPoly.zero(XY), [p("x")], lex(2)).is_zero()
    f = p("x + y")
    assert reduce(f, [], lex(2)) == f


def test_reduce_difference_in_ideal():
    rng = random.Random(41)
    order = degrevlex(2)
    for _ in range(10):
        gens = [rand_poly(rng, XY) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()] or [p("x")]
        gb = buchberger(gens, order)
        f = rand_poly(rng, XY)
        r = reduce(f, gb.polys, order)
        assert ideal_membership(f - r, gb)


def test_s_polynomial_self_is_zero():
    f = p("x*y - 1")
    assert s_polynomial(f, f, lex(2)).is_zero()


def test_s_polynomial_example():
    s = s_polynomial(p("x*y - 1"), p("y^2 - 1"), lex(2))
    assert s in (p("x - y"), p("y - x"))


def test_s_polynomial_zero_rejected():
    with pytest.raises(ValueError):
        s_polynomial(p("x"), MPoly.zero(XY), lex(2))


def test_buchberger_single_generator():
    gb = buchberger([p("x")], degrevlex(2))
    assert gb.polys == [p("x")]


def test_buchberger_elimination_witness():
    gens = [parse_poly("x^2 - y", XYZ), parse_poly("x^3 - z", XYZ)]
    gb = buchberger(gens, lex(3))
    assert ideal_membership(parse_poly("y^3 - z^2", XYZ), gb)


def test_buchberger_spoly_closure_and_membership():
    rng = random.Random(43)
    order = degrevlex(3)
    for _ in range(10):
        gens = [g for g in (rand_poly(rng, XYZ) for _ in range(3))
                if not g.is_zero()]
        if not gens:
            continue
        gb = buchberger(gens, order)
        for g in gens:
            assert ideal_membership(g, gb)
        for i in range(len(gb.polys)):
            for j in range(i + 1, len(gb.polys)):
                s = s_polynomial(gb.polys[i], gb.polys[j], order)
                assert reduce(s, gb.polys, order).is_zero()


def test_buchberger_permutation_canonicity():
    rng = random.Random(47)
    gens = [p("x^2 - y"), p("x*y - 1"), p("y^3 - x")]
    base = buchberger(gens, degrevlex(2)).polys
    for _ in range(5):
        perm = gens[:]
        rng.shuffle(perm)
        assert buchberger(perm, degrevlex(2)).polys == base


def test_buchberger_resource_limits():
    gens = [parse_poly("x^3*y - z^2", XYZ), parse_poly("y^4 - x*z", XYZ),
            parse_poly("z^3 - x^2*y^2", XYZ)]
    with pytest.raises(InconclusiveError) as e:
        buchberger(gens, degrevlex(3), GBOptions(max_pairs=1))
    assert e.value.stats is not None


def test_leading_terms_minimal():
    gb = buchberger([p("x*y - 1"), p("y^2 - 1")], lex(2))
    lts = leading_terms(gb)
    for m in lts:
        assert sum(m) >= 1
    # no leading term divides another
    for a in lts:
        for b in lts:
            if a != b:
                assert not all(x <= y for x, y in zip(a, b))


def test_ideal_membership_unit_not_in_proper_ideal():
    # x-1 and y-1 share the zero (1,1), so 1 is not in the ideal
    gb = buchberger([p("x - 1"), p("y - 1")], degrevlex(2))
    assert not ideal_membership(MPoly.const(XY, 1), gb)


def test_ideal_membership_constructed_combination():
    rng = random.Random(53)
    gens = [p("x^2 + y"), p("x*y - 2")]
    gb = buchberger(gens, degrevlex(2))
    f = rand_poly(rng, XY) * gens[0] + rand_poly(rng, XY) * gens[1]
    assert ideal_membership(f, gb)


def test_elimination_trivial_cases():
    assert elimination_ideal([p("x")], 1) == []
    out = elimination_ideal([p("x - y"), p("x + y")], 1)
    assert len(out) == 1 and out[0].primitive() == p("y")


def test_elimination_lex_hint_agrees():
    gens = [parse_poly("x^2 - y", XYZ), parse_poly("x^3 - z", XYZ)]
    blk = elimination_ideal(gens, 2, "block")
    lx = elimination_ideal(gens, 2, "lex")
    gb_b = buchberger(blk, degrevlex(3))
    for f in lx:
        assert ideal_membership(f, gb_b)
    gb_l = buchberger(lx, degrevlex(3))
    for f in blk:
        assert ideal_membership(f, gb_l)


def test_elimination_output_in_subring_and_ideal():
    gens = [parse_poly("x^2 - y", XYZ), parse_poly("x*z - y^2", XYZ)]
    out = elimination_ideal(gens, 2)
    gb = buchberger(gens, degrevlex(3))
    for f in out:
        assert "x" not in f.variables()
        assert ideal_membership(f, gb)


def test_ideal_file_round_trip(tmp_path):
    path = tmp_path / "test.ideal"
    polys = [p("x^2 - 1/3*y"), p("y")]
    write_ideal_file(path, XY, polys, "round trip")
    ring2, polys2 = read_ideal_file(path)
    assert ring2 == XY and polys2 == polys
