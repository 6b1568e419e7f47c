"""End-to-end acceptance suite.

Each test covers one acceptance area and prints a single PASS line; expected
values are exact (Fraction) unless the fixture's spectrum is irrational.
"""

import random
import time
from fractions import Fraction

import pytest

from schemepoly import (Domain, GrLex, Lex, MPoly, all_closed_subsets,
                        block_scheme, boundary_ideal_generators, buchberger,
                        census_equivalence, check_p_structure, closure,
                        composition_ideal_chain, composition_series,
                        crested_product, crested_p_structure,
                        crested_q_structure, direct_product,
                        eigen_consistency, find_duality_pairing,
                        formal_duality_check, full_factorization,
                        is_imprimitive, normal_form,
                        recognize_direct_product, relabel, quotient_scheme,
                        search_q_structure, s_poly,
                        verify_block_quotient_ideals)
from schemepoly import catalog
from schemepoly.catalog import (bipartite_fg_polynomials,
                                distance_polynomials,
                                drg_bivariate_structures)


def x(i, ell=2):
    return MPoly.var(i, ell)


def point_domain(s):
    labeling = {(0,): 0, (1,): 1}
    return Domain(1, frozenset(labeling), labeling)


def test_complete_multipartite_family():
    """Eigenmatrix, boundary polynomials, and both ideal routes for the
    complete multipartite schemes."""
    for m, r in [(3, 2), (4, 3), (2, 5)]:
        entry = catalog.complete_multipartite(m, r)
        s, dom, order = entry.scheme, entry.domain, entry.order
        e = s.eigen()
        assert [list(row) for row in e.P] == [
            [1, r * (m - 1), r - 1], [1, -r, r - 1], [1, 0, -1]]
        fam = boundary_ideal_generators(s, dom, order)
        assert fam.w[(2, 0)] == (x(0) ** 2 - (m - 2) * r * x(0)
                                 - (m - 1) * r * x(1) - (m - 1) * r)
        assert fam.w[(1, 1)] == x(0) * x(1) - (r - 1) * x(0)
        assert fam.w[(0, 2)] == x(1) ** 2 - (r - 2) * x(1) - (r - 1)
        c = closure(s, {(0, 1)})
        report = verify_block_quotient_ideals(s, dom, order, c)
        blk = x(0, 1) ** 2 - (r - 2) * x(0, 1) - (r - 1)
        qt = x(0, 1) ** 2 - (m - 2) * x(0, 1) - (m - 1)
        assert report["block_ideal"] == [blk.render()]
        assert report["quotient_ideal"] == [qt.render()]
        assert report["block_holds"] and report["quotient_holds"]
    print("ACCEPTANCE complete-multipartite eigen/ideals: PASS")


def test_nonbinary_johnson_family():
    """Bivariate structure, block/quotient identification, and the full
    ideal verifier for the weight-2 ternary schemes on 3 and 4 coordinates."""
    t0 = time.time()
    for n in (3, 4):
        entry = catalog.nonbinary_johnson(3, 2, n)
        s = entry.scheme
        assert check_p_structure(s, entry.domain, entry.order).holds
        c = closure(s, {(0, 1)})
        assert sorted(c.members) == [(0, 0), (0, 1), (0, 2)]
        bd = block_scheme(s, c, 0)
        halved = relabel(bd.scheme, {(0, j): j for j in range(3)})
        h22 = catalog.hamming(2, 2).scheme
        assert halved.tensor().p == h22.tensor().p
        assert halved.eigen().P == h22.eigen().P
        qd = quotient_scheme(s, c)
        supports = relabel(qd.scheme, {l: l[0] for l in qd.scheme.labels})
        jn2 = catalog.johnson(n, 2).scheme
        assert supports.tensor().p == jn2.tensor().p
        report = verify_block_quotient_ideals(s, entry.domain, entry.order, c)
        assert report["block_holds"] and report["quotient_holds"]
    assert time.time() - t0 < 60
    print("ACCEPTANCE nonbinary-johnson structure/identification: PASS")


@pytest.mark.parametrize("fixture", ["q3", "q4", "c6"])
def test_distance_regular_bivariate(fixture, request):
    """Bipartite and antipodal bivariate structures of the hypercubes and
    the 6-cycle, with halved/folded scheme checks and the even/odd
    polynomial decomposition."""
    s = request.getfixturevalue(fixture)
    d = s.d
    out = drg_bivariate_structures(s)
    assert set(out) == {"bipartite", "antipodal"}
    for side in ("bipartite", "antipodal"):
        entry = out[side]
        assert entry["verdict"].holds
        report = verify_block_quotient_ideals(
            s, entry["domain"], entry["order"], entry["closed_subset"])
        assert report["block_holds"] and report["quotient_holds"]
    # halved scheme sits on one part; folded scheme on antipodal pairs
    halved = block_scheme(s, closure(s, {2}), 0).scheme
    folded = quotient_scheme(s, closure(s, {d})).scheme
    assert halved.n == s.n // 2 and halved.d == d // 2
    assert folded.n == s.n // 2 and folded.d == d // 2
    assert quotient_scheme(s, closure(s, {2})).scheme.n == 2
    # even/odd decomposition reproduces the distance polynomials exactly
    vd = distance_polynomials(s)
    f, g = bipartite_fg_polynomials(s)
    t = MPoly.var(0, 1)
    for j, fj in enumerate(f):
        assert fj.subs({0: vd[2]}) == vd[2 * j]
    for j, gj in enumerate(g):
        assert t * gj.subs({0: vd[2]}) == vd[2 * j + 1]
    print(f"ACCEPTANCE distance-regular bivariate [{fixture}]: PASS")


CENSUS = [
    ("complete", (2,), False), ("complete", (3,), False),
    ("complete", (5,), False),
    ("complete_multipartite", (3, 2), True),
    ("complete_multipartite", (2, 2), True),
    ("hamming", (2, 2), True), ("hamming", (3, 2), True),
    ("johnson", (4, 2), True), ("johnson", (5, 2), False),
    ("graph_distance", ("petersen",), False),
    ("graph_distance", ("cycle", 4), True),
    ("graph_distance", ("cycle", 5), False),
    ("graph_distance", ("cycle", 6), True),
    ("nonbinary_johnson", (3, 2, 3), True),
]


def test_imprimitivity_census():
    """Over the small-class catalog, a nontrivial closed subset exists iff
    the canonical elimination-structure search succeeds, on both sides."""
    assert len(CENSUS) >= 10
    for family, params, expect_imprimitive in CENSUS:
        s = catalog.make_named_scheme((family, params)).scheme
        assert s.d <= 5
        rep = census_equivalence(s)
        assert rep["consistent"], (family, params, rep)
        assert rep["imprimitive"] == expect_imprimitive, (family, params)
    print(f"ACCEPTANCE imprimitivity census ({len(CENSUS)} schemes): PASS")


SCHEME_IDEAL_FIXTURES = [
    lambda: catalog.complete_multipartite(3, 2),
    lambda: catalog.complete_multipartite(4, 3),
    lambda: catalog.nonbinary_johnson(3, 2, 3),
]


def test_groebner_soundness():
    """Every scheme-derived generator set is already a Gröbner basis whose
    staircase complement is the domain; plus 200 random ideals."""
    cases = []
    for mk in SCHEME_IDEAL_FIXTURES:
        entry = mk()
        cases.append((entry.scheme, entry.domain, entry.order))
    for name in (("hypercube", 3), ("cycle", 6)):
        s = catalog.graph_distance(*name).scheme
        for side in drg_bivariate_structures(s).values():
            cases.append((s, side["domain"], side["order"]))
    from schemepoly.mpoly import GroebnerBasis
    for s, dom, order in cases:
        fam = boundary_ideal_generators(s, dom, order)
        gens = list(fam.generators)
        # the boundary generators are themselves a Gröbner basis ...
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                sp = s_poly(gens[i], gens[j], order)
                assert normal_form(sp, gens, order).is_zero()
        # ... whose staircase complement is exactly the domain
        raw = GroebnerBasis(tuple(gens), order)
        assert sorted(raw.standard_monomials(bound=[s.d] * dom.ell)) \
            == sorted(dom.points)
        gb = buchberger(gens, order)
        assert all(gb.contains(g) for g in gens)
        assert sorted(gb.standard_monomials(bound=[s.d] * dom.ell)) \
            == sorted(dom.points)

    rng = random.Random(0)
    checked = 0
    while checked < 200:
        ell = rng.randint(1, 3)
        order = GrLex(ell)
        gens = []
        for _ in range(rng.randint(1, 3)):
            terms = {}
            for _ in range(rng.randint(1, 4)):
                m = tuple(rng.randint(0, 4) for _ in range(ell))
                if sum(m) <= 4:
                    terms[m] = terms.get(m, 0) + rng.randint(-3, 3)
            p = MPoly(terms, ell)
            if not p.is_zero():
                gens.append(p)
        if not gens:
            continue
        gb = buchberger(gens, order)
        assert buchberger(list(gb.generators), order) == gb
        for g in gens:
            assert gb.contains(g)
        basis = list(gb.generators)
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                sp = s_poly(basis[i], basis[j], order)
                assert normal_form(sp, basis, order).is_zero()
        checked += 1
    print("ACCEPTANCE groebner soundness (+200 random ideals): PASS")


def test_eigen_characterization():
    """For every passing structure fixture: v_alpha at the eigenvalue points
    reproduces P, boundary polynomials vanish there, d+1 distinct points."""
    count = 0
    for mk in SCHEME_IDEAL_FIXTURES:
        entry = mk()
        report = eigen_consistency(entry.scheme, entry.domain, entry.order)
        assert report["count"] == entry.scheme.d + 1
        count += 1
    for name in (("hypercube", 3), ("hypercube", 4), ("cycle", 6)):
        s = catalog.graph_distance(*name).scheme
        for side in drg_bivariate_structures(s).values():
            report = eigen_consistency(s, side["domain"], side["order"])
            assert report["count"] == s.d + 1
            count += 1
    print(f"ACCEPTANCE eigen characterization ({count} fixtures): PASS")


def test_products_and_recognition(k2, k3, km32, petersen):
    """Crested products over four factor/closed-subset combinations, their
    structure verdicts, and direct-product recognition."""
    c_same = {(0, 0), (0, 1)}
    combos = [
        (k2, {0}, k2, {0, 1}),
        (k3, {0, 1}, k2, {0}),
        (km32.scheme, c_same, k2, {0, 1}),
        (k2, {0}, km32.scheme, c_same),
    ]
    for s1, c1, s2, c2 in combos:
        prod = crested_product(s1, c1, s2, c2)  # factor checks are internal
        assert is_imprimitive(prod.scheme)
        canonical = frozenset(l for l, (i, _) in prod.index_map.items()
                              if i == s1.i0)
        assert any(c.members == canonical
                   for c in all_closed_subsets(prod.scheme))

    wreath = crested_product(k2, {0}, k2, {0, 1})
    for fn in (crested_p_structure, crested_q_structure):
        dom, order, verdict = fn(wreath, point_domain(k2), Lex(1),
                                 point_domain(k2), Lex(1))
        assert verdict.holds
    cp = crested_product(km32.scheme, c_same, k2, {0, 1})
    dom, order, verdict = crested_p_structure(
        cp, km32.domain, Lex(2), point_domain(k2), Lex(1))
    assert verdict.holds
    d1s = search_q_structure(km32.scheme, Lex(2), 2)[0][0]
    dom, order, verdict = crested_q_structure(
        cp, d1s, Lex(2), point_domain(k2), Lex(1))
    assert verdict.holds

    for s1, s2 in [(k2, k2), (k2, k3), (k3, k3)]:
        prod = direct_product(s1, s2)
        hit = recognize_direct_product(prod.scheme)
        assert hit is not None
        assert {hit[0].n, hit[1].n} == {s1.n, s2.n}
    assert recognize_direct_product(petersen) is None
    assert recognize_direct_product(km32.scheme) is None
    print("ACCEPTANCE crested products and recognition: PASS")


@pytest.mark.xfail(
    strict=True,
    reason="the 3-cube scheme is isomorphic to the direct product of the "
    "2-point and 4-point complete-graph schemes (the cube graph is K4 x K2), "
    "so a correct recognizer cannot report it as irreducible")
def test_recognition_reports_hypercube_irreducible(q3):
    assert recognize_direct_product(q3) is None


def test_hypercube_recognition_factorization(q3):
    hit = recognize_direct_product(q3)
    assert hit is not None and {hit[0].n, hit[1].n} == {2, 4}
    assert sorted(f.n for f in full_factorization(q3)) == [2, 4]
    print("ACCEPTANCE recognition factorizes the 3-cube as 2 x 4: PASS")


def test_formal_duality(h22, h32, z4):
    """Self-duality of binary Hamming and complete-graph schemes, with the
    derived block/quotient dualities; cyclic group of order 4 in float mode."""
    for s in (h22, h32, catalog.complete(3).scheme,
              catalog.complete(5).scheme):
        pairing = find_duality_pairing(s, s)
        assert pairing is not None
        report = formal_duality_check(s, s, pairing)
        assert report["dual"], report["failures"]
        for entry in report["derived"]:
            assert entry["image_closed"]
            assert entry["block_vs_quotient"] and entry["quotient_vs_block"]
    # derived dualities present on the imprimitive fixtures
    assert formal_duality_check(h32, h32,
                                find_duality_pairing(h32, h32))["derived"]
    pairing = find_duality_pairing(z4, z4)
    assert pairing is not None
    report = formal_duality_check(z4, z4, pairing)
    assert report["dual"] and report["derived"]
    print("ACCEPTANCE formal duality: PASS")


def test_composition_series(wreath3):
    """All maximal chains of the 8-point iterated wreath product, with the
    per-stage ideal chain (elimination route + inclusion) verified."""
    s = wreath3.scheme
    assert s.n == 8
    chains = composition_series(s)
    assert chains
    for entry in chains:
        chain = entry["chain"]
        assert chain[0].members == frozenset(s.labels)
        assert chain[-1].members == {s.i0}
        for st in entry["stages"]:
            assert (st["factor"].n, st["factor"].d) == (2, 1)
        stages = composition_ideal_chain(s, chain)
        assert len(stages) == len(chain) - 1
    print(f"ACCEPTANCE composition series ({len(chains)} chain(s)): PASS")
