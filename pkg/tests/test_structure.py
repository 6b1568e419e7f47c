"""Domain validation, structure verdicts, polynomial families, searches."""

import pytest

from schemepoly import (Domain, GrLex, Lex, MPoly, boundary_ideal_generators,
                        canonical_block_order_structure,
                        canonical_elimination_structure,
                        canonical_search_battery, check_p_structure,
                        check_q_structure, eigen_consistency,
                        search_p_structure, search_q_structure)
from schemepoly.structure import associated_polynomials, \
    matrix_evaluation_check
from schemepoly.errors import (LabelingMismatch, SearchSpaceTooLarge,
                               TrivialClosedSubset)


def x(i):
    return MPoly.var(i, 2)


def test_domain_validation():
    with pytest.raises(LabelingMismatch):  # missing origin
        Domain(1, frozenset({(1,)}), {(1,): 1}).validate()
    with pytest.raises(LabelingMismatch):  # not downward closed
        Domain(2, frozenset({(0, 0), (1, 0), (0, 1), (2, 1)}),
               {(0, 0): 0, (1, 0): 1, (0, 1): 2, (2, 1): 3}).validate()
    with pytest.raises(LabelingMismatch):  # labeling not injective
        Domain(2, frozenset({(0, 0), (1, 0), (0, 1)}),
               {(0, 0): 0, (1, 0): 1, (0, 1): 1}).validate()


def test_complete_multipartite_structure(km32):
    s, dom, order = km32.scheme, km32.domain, km32.order
    verdict = check_p_structure(s, dom, order)
    assert verdict.holds
    fam = boundary_ideal_generators(s, dom, order)
    assert fam.v[(0, 0)] == MPoly.const(1, 2)
    assert fam.v[(1, 0)] == x(0)
    assert fam.v[(0, 1)] == x(1)
    assert fam.w[(2, 0)] == x(0) ** 2 - 2 * x(0) - 4 * x(1) - 4
    assert fam.w[(1, 1)] == x(0) * x(1) - x(0)
    assert fam.w[(0, 2)] == x(1) ** 2 - 1
    assert matrix_evaluation_check(s, dom, fam)
    report = eigen_consistency(s, dom, order, family=fam)
    assert report["count"] == s.d + 1
    assert set(report["points"]) == {(4, 1), (-2, 1), (0, -1)}


def test_failing_structure_verdict(petersen):
    labeling = {(0, 0): 0, (1, 0): 1, (0, 1): 2}
    dom = Domain(2, frozenset(labeling), labeling)
    verdict = check_p_structure(petersen, dom, Lex(2))
    assert not verdict.holds
    assert verdict.violations


def test_associated_polynomials_only(km32):
    fam = associated_polynomials(km32.scheme, km32.domain, km32.order)
    assert fam.w == {}
    assert len(fam.v) == km32.scheme.d + 1


def test_search_p_structure(km32, petersen):
    hits = search_p_structure(km32.scheme, Lex(2), 2)
    assert hits
    assert any(dom.labeling == km32.domain.labeling for dom, _ in hits)
    for dom, verdict in hits:
        assert verdict.holds
    with pytest.raises(SearchSpaceTooLarge):
        search_p_structure(km32.scheme, GrLex(4), 4)


def test_search_q_structure(h22):
    hits = search_q_structure(h22, Lex(2), 2)
    assert hits
    for dom, verdict in hits:
        assert verdict.holds
        assert check_q_structure(h22, dom, Lex(2)).holds


def test_canonical_battery(km32, petersen, q3):
    assert canonical_search_battery(km32.scheme, side="p")
    assert canonical_search_battery(petersen, side="p") == []
    assert canonical_search_battery(q3, side="p")
    assert canonical_search_battery(q3, side="q")


def test_canonical_structures_from_closed_subsets(q3, km32):
    for members in ({0, 2}, {0, 3}):
        dom, order, verdict = canonical_elimination_structure(q3, members)
        assert verdict.holds and order.s == dom.ell - 1
    # the stronger block-composed order holds for the multipartite scheme
    # but is genuinely stronger: it fails on the hypercube's subsets
    dom2, order2, verdict2 = canonical_block_order_structure(
        km32.scheme, {(0, 0), (0, 1)})
    assert verdict2.holds and order2.s == 1
    assert not canonical_block_order_structure(q3, {0, 3})[2].holds
    with pytest.raises(TrivialClosedSubset):
        canonical_elimination_structure(q3, {0})
