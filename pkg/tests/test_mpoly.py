"""Polynomial arithmetic, division, Buchberger, elimination plumbing."""

import random
from fractions import Fraction

import pytest

from schemepoly import (GrLex, Lex, MPoly, adjoin_and_eliminate, buchberger,
                        elimination_ideal, normal_form, rescale_ideal,
                        s_poly)
from schemepoly.mpoly import eliminate_vars
from schemepoly.errors import OrderNotEliminationType


def x(i, ell=2):
    return MPoly.var(i, ell)


def test_normal_form_examples():
    f = x(0, 1) ** 2 + x(0, 1)
    g = x(0, 1) ** 2 - 1
    assert normal_form(f, [g], Lex(1)) == x(0, 1) + 1
    # remainder is zero exactly for ideal members
    assert normal_form(g * (x(0, 1) + 3), [g], Lex(1)).is_zero()


def test_buchberger_small_example():
    # <x^2 - y, x^3 - x> under lex x > y
    gens = [x(0) ** 2 - x(1), x(0) ** 3 - x(0)]
    gb = buchberger(gens, Lex(2))
    for g in gens:
        assert gb.contains(g)
    assert gb.contains(x(0) * x(1) - x(0))
    assert gb.contains(x(1) ** 2 - x(1))
    assert not gb.contains(x(0) - 1)
    # reduced basis is a fixed point
    assert buchberger(list(gb.generators), Lex(2)) == gb
    # S-polynomial criterion
    gens2 = list(gb.generators)
    for i in range(len(gens2)):
        for j in range(i + 1, len(gens2)):
            sp = s_poly(gens2[i], gens2[j], Lex(2))
            assert normal_form(sp, gens2, Lex(2)).is_zero()


def test_standard_monomials():
    gb = buchberger([x(0) ** 2 - 1, x(1) ** 2 - x(1)], GrLex(2))
    assert sorted(gb.standard_monomials()) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_elimination_ideal():
    gb = buchberger([x(0) - x(1), x(1) ** 2 - 1], Lex(2))
    elim = elimination_ideal(gb, 1)
    assert [g.render() for g in elim.generators] == ["x1^2 - 1"]
    with pytest.raises(OrderNotEliminationType):
        elimination_ideal(buchberger([x(0) - x(1)], GrLex(2)), 1)


def test_eliminate_vars_matches_elimination_ideal():
    gens = [x(0) ** 2 - x(1) - 2, x(0) * x(1) - x(0), x(1) ** 2 - 1]
    gb = buchberger(gens, Lex(2))
    route_a = elimination_ideal(gb, 1)
    route_b = eliminate_vars(gens, 2, [1], Lex(1))
    assert [g.render() for g in route_a.generators] \
        == [g.render() for g in route_b.generators]


def test_adjoin_and_eliminate():
    # substitute x2 = 1 into the complete-multipartite (3,2) ideal
    gens = [x(0) ** 2 - 2 * x(0) - 4 * x(1) - 4,
            x(0) * x(1) - x(0), x(1) ** 2 - 1]
    gb = buchberger(gens, Lex(2))
    out = adjoin_and_eliminate(gb, {1: 1}, out_order=Lex(1))
    assert [g.render() for g in out.generators] == ["x1^2 - 2*x1 - 8"]


def test_rescale_ideal_involution():
    gens = [x(0) ** 2 - 2 * x(0) - 4 * x(1) - 4, x(1) ** 2 - 1]
    gb = buchberger(gens, GrLex(2))
    once = rescale_ideal(gb, [Fraction(2), Fraction(1, 3)])
    back = rescale_ideal(once, [Fraction(1, 2), Fraction(3)])
    assert back == gb


def random_poly(rng, ell, deg, nterms):
    terms = {}
    for _ in range(nterms):
        m = tuple(rng.randint(0, deg) for _ in range(ell))
        terms[m] = terms.get(m, 0) + rng.randint(-4, 4)
    return MPoly(terms, ell)


def test_random_ideals_soundness():
    rng = random.Random(7)
    for _ in range(40):
        ell = rng.randint(2, 3)
        order = GrLex(ell)
        gens = [random_poly(rng, ell, 3, rng.randint(1, 3))
                for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        gb = buchberger(gens, order)
        for g in gens:
            assert gb.contains(g)
        assert buchberger(list(gb.generators), order) == gb
        basis = list(gb.generators)
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                sp = s_poly(basis[i], basis[j], order)
                assert normal_form(sp, basis, order).is_zero()
        # normal form is a linear projection
        if basis:
            f = random_poly(rng, ell, 3, 3)
            g = random_poly(rng, ell, 3, 3)
            nf = gb.normal_form
            assert nf(f + g) == nf(f) + nf(g)
            assert nf(nf(f)) == nf(f)
