"""Core scheme validation, intersection numbers, eigen and Krein data."""

from fractions import Fraction

import pytest

from schemepoly import (relabel, scheme_from_json, scheme_to_json,
                        validate_scheme)
from schemepoly.errors import (AxiomViolation, IrrationalEigenvalues,
                               NonSquare, NotBijective)
from schemepoly.scheme import krein_numbers


def brute_force_p(s):
    """Triple-loop recomputation of p^k_{ij} from witness pairs."""
    dd = s.d + 1
    witness = {}
    for x in range(s.n):
        for y in range(s.n):
            witness.setdefault(int(s.rel[x, y]), (x, y))
    p = [[[0] * dd for _ in range(dd)] for _ in range(dd)]
    for k in range(dd):
        x, y = witness[k]
        for i in range(dd):
            for j in range(dd):
                p[k][i][j] = sum(1 for z in range(s.n)
                                 if int(s.rel[x, z]) == i
                                 and int(s.rel[z, y]) == j)
    return p


@pytest.mark.parametrize("fixture", ["km32", "q3", "petersen"])
def test_intersection_numbers_against_brute_force(fixture, request):
    s = request.getfixturevalue(fixture)
    s = getattr(s, "scheme", s)
    t = s.tensor()
    assert [[list(r) for r in pk] for pk in t.p] == brute_force_p(s)


@pytest.mark.parametrize("fixture", ["km32", "q3", "h22", "petersen"])
def test_valency_identities(fixture, request):
    s = request.getfixturevalue(fixture)
    s = getattr(s, "scheme", s)
    t = s.tensor()
    dd = s.d + 1
    k = [t.valencies[l] for l in s.labels]
    assert sum(k) == s.n
    for kk in range(dd):
        for i in range(dd):
            # row sums of B_i and the symmetry of the structure constants
            assert sum(t.p[kk][i][j] for j in range(dd)) == k[i]
            for j in range(dd):
                assert t.p[kk][i][j] == t.p[kk][j][i]
    for i in range(dd):
        for j in range(dd):
            assert sum(t.p[kk][i][j] * k[kk] for kk in range(dd)) == k[i] * k[j]


@pytest.mark.parametrize("fixture", ["km32", "q3", "petersen", "h22"])
def test_eigenmatrices_inverse_pair(fixture, request):
    s = request.getfixturevalue(fixture)
    s = getattr(s, "scheme", s)
    e = s.eigen()
    dd = s.d + 1
    for a in range(dd):
        for b in range(dd):
            val = sum(e.P[a][c] * e.Q[c][b] for c in range(dd))
            assert val == (s.n if a == b else 0)
    # first column of P is all ones; row at i0 of Q gives the multiplicities
    assert all(e.P[j][s.label_pos(s.i0)] == 1 for j in range(dd))
    assert tuple(e.Q[s.label_pos(s.i0)]) == e.multiplicities
    assert sum(e.multiplicities) == s.n


@pytest.mark.parametrize("fixture", ["km32", "q3", "petersen"])
def test_krein_numbers_rederivation(fixture, request):
    s = request.getfixturevalue(fixture)
    s = getattr(s, "scheme", s)
    e = s.eigen()
    assert krein_numbers(e) == e.krein
    dd = s.d + 1
    for k in range(dd):
        for i in range(dd):
            # row sums mirror the valency identity, with multiplicities
            assert sum(e.krein[k][i][j] for j in range(dd)) \
                == e.multiplicities[i]
            for j in range(dd):
                assert e.krein[k][i][j] >= 0


def test_complete_graph_eigen(k2, k5):
    assert k2.eigen().P == ((1, 1), (1, -1))
    assert k5.eigen().P == ((1, 4), (1, -1))
    assert k5.eigen().multiplicities == (1, 4)


def test_relabel_transports_structure(km32):
    s = km32.scheme
    phi = {(0, 0): 0, (1, 0): 1, (0, 1): 2}
    s2 = relabel(s, phi)
    assert s2.labels == (0, 1, 2)
    assert s2.tensor().valencies == {0: 1, 1: 4, 2: 1}
    assert s2.eigen().P == s.eigen().P
    with pytest.raises(NotBijective):
        relabel(s, {(0, 0): 0, (1, 0): 0, (0, 1): 1})


def test_axiom_violations():
    with pytest.raises(NonSquare):
        validate_scheme([[0, 1], [1]])
    # identity label off the diagonal
    with pytest.raises(AxiomViolation):
        validate_scheme([[0, 0], [0, 0]])
    # perturbed K4: one asymmetric edge relabeled breaks the axioms
    mat = [[0 if x == y else 1 for y in range(4)] for x in range(4)]
    mat[0][1] = 2
    with pytest.raises(AxiomViolation):
        validate_scheme(mat)
    # non-constant structure counts: path P3 distance matrix
    with pytest.raises(AxiomViolation):
        validate_scheme([[0, 1, 2], [1, 0, 1], [2, 1, 0]])


def test_irrational_spectrum_raises_in_exact_mode():
    mat = [[(y - x) % 5 for y in range(5)] for x in range(5)]
    s = validate_scheme(mat)
    with pytest.raises(IrrationalEigenvalues):
        s.eigen()


def test_float_mode_cyclic_group(z4):
    e = z4.eigen()
    assert not e.exact
    dd = z4.d + 1
    for a in range(dd):
        for b in range(dd):
            val = sum(e.P[a][c] * e.Q[c][b] for c in range(dd))
            assert abs(val - (z4.n if a == b else 0)) < 1e-7


def test_json_round_trip(km32, q3):
    for s in (km32.scheme, q3):
        assert scheme_from_json(scheme_to_json(s)) == s
