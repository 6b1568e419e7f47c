"""Multivariate P-/Q-polynomial structure verification.

A Domain is a finite downward-closed subset D of N^ell together with a
bijective labeling onto the scheme's relation index set (P side) or onto the
idempotent index set J = {0..d} (Q side).  The structure check is the
dominance condition on structure constants:

  for every generator direction i and every alpha in D,
    - any beta in D with p^beta_{eps_i, alpha} != 0 satisfies beta <= alpha+eps_i,
    - if alpha+eps_i in D then p^{alpha+eps_i}_{eps_i, alpha} != 0,

with the Krein numbers replacing intersection numbers on the Q side.  When the
verdict holds, each basis element A_alpha is a polynomial v_alpha of
multidegree alpha in the generators, and each index just outside D yields a
monic boundary relation w; the w's generate the defining ideal.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import ratlin
from .errors import (ConsistencyFailure, LabelingMismatch,
                     SearchSpaceTooLarge, SingularTransition,
                     TrivialClosedSubset)
from .mpoly import MPoly
from .orders import ElimGraded, MonomialOrder
from .scheme import FLOAT_TOL


def eps(i, ell):
    v = [0] * ell
    v[i] = 1
    return tuple(v)


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_le(a, b):
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class Domain:
    ell: int
    points: frozenset
    labeling: dict  # point -> label token

    def __post_init__(self):
        object.__setattr__(self, "labeling", dict(self.labeling))

    @property
    def o(self):
        return (0,) * self.ell

    def validate(self):
        pts = self.points
        if self.o not in pts:
            raise LabelingMismatch("domain must contain the origin")
        for i in range(self.ell):
            if eps(i, self.ell) not in pts:
                raise LabelingMismatch(f"domain must contain eps_{i+1}")
        for p in pts:
            for i in range(self.ell):
                if p[i] > 0 and tuple(
                        x - (1 if t == i else 0) for t, x in enumerate(p)) not in pts:
                    raise LabelingMismatch(f"domain not downward-closed at {p}")
        if set(self.labeling) != set(pts):
            raise LabelingMismatch("labeling keys must equal the domain points")
        if len(set(self.labeling.values())) != len(pts):
            raise LabelingMismatch("labeling must be injective")

    def label(self, point):
        return self.labeling[point]

    def sorted_points(self, order):
        return order.sorted(self.points)

    def to_json(self):
        def enc(tok):
            return list(tok) if isinstance(tok, tuple) else tok
        return {"ell": self.ell,
                "points": [list(p) for p in sorted(self.points)],
                "labeling": {",".join(map(str, p)): enc(l)
                             for p, l in sorted(self.labeling.items())}}

    @staticmethod
    def from_json(obj):
        from .scheme import normalize_label
        ell = obj["ell"]
        pts = frozenset(tuple(p) for p in obj["points"])
        labeling = {}
        for k, v in obj["labeling"].items():
            pt = tuple(int(t) for t in k.split(","))
            labeling[pt] = normalize_label(v)
        return Domain(ell, pts, labeling)


@dataclass(frozen=True)
class StructureVerdict:
    holds: bool
    violations: tuple = ()
    witness: tuple = ()   # ((alpha, i, top coefficient), ...) for alpha+eps_i in D

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class PolyFamily:
    v: dict            # point -> MPoly
    w: dict            # boundary index -> MPoly (monic)
    order: MonomialOrder

    @property
    def generators(self):
        """Boundary generators G, sorted by leading monomial ascending."""
        key = self.order.key()
        return tuple(sorted(self.w.values(),
                            key=lambda g: key(g.multideg(self.order))))


@dataclass(frozen=True)
class AlgebraView:
    """Uniform access to structure constants for P side / Q side."""
    labels: tuple
    identity: object
    tensor: object     # nested [k][i][j] by label positions
    exact: bool
    eigen_table: tuple  # rows: one per dual index, columns by `labels`
    scale: tuple        # per-label normalization (valencies / multiplicities)

    def pos(self, label):
        return self.labels.index(label)

    def p(self, k, i, j):
        return self.tensor[self.pos(k)][self.pos(i)][self.pos(j)]

    def nonzero(self, v):
        if self.exact:
            return v != 0
        return abs(v) > FLOAT_TOL * max(1.0, max(abs(s) for s in self.scale))


def p_view(s):
    t = s.tensor()
    return AlgebraView(
        labels=s.labels, identity=s.i0, tensor=t.p, exact=True,
        eigen_table=None, scale=tuple(t.valencies[l] for l in s.labels))


def q_view(s):
    e = s.eigen()
    dd = e.d + 1
    return AlgebraView(
        labels=tuple(range(dd)), identity=0, tensor=e.krein, exact=e.exact,
        eigen_table=None, scale=tuple(e.multiplicities))


def _check_structure(view, domain, order):
    domain.validate()
    if set(domain.labeling.values()) != set(view.labels):
        raise LabelingMismatch("labeling is not a bijection onto the index set")
    if domain.label(domain.o) != view.identity:
        raise LabelingMismatch("origin must be labeled by the identity index")
    ell = domain.ell
    violations = []
    witness = []
    for i in range(ell):
        gi = domain.label(eps(i, ell))
        for alpha in sorted(domain.points):
            top = vec_add(alpha, eps(i, ell))
            for beta in domain.points:
                val = view.p(domain.label(beta), gi, domain.label(alpha))
                if view.nonzero(val) and not order.le(beta, top):
                    violations.append((i, alpha, beta, val))
            if top in domain.points:
                val = view.p(domain.label(top), gi, domain.label(alpha))
                if not view.nonzero(val):
                    violations.append((i, alpha, top, 0))
                else:
                    witness.append((alpha, i, val))
    return StructureVerdict(not violations, tuple(violations), tuple(witness))


def check_p_structure(s, domain, order):
    return _check_structure(p_view(s), domain, order)


def check_q_structure(s, domain, order):
    return _check_structure(q_view(s), domain, order)


# ---------------------------------------------------------------------------
# polynomial families


def _mul_gen(view, vec, g):
    """Multiply an algebra element (dict label -> coeff) by generator A_g."""
    out = {}
    for i, c in vec.items():
        if c == 0:
            continue
        gp, ip = view.pos(g), view.pos(i)
        for kp, k in enumerate(view.labels):
            val = view.tensor[kp][gp][ip]
            if val != 0:
                out[k] = out.get(k, 0) + c * val
    return out


def _monomial_vectors(view, domain, order):
    """Expansion of each monomial product A^beta (beta in D) in the A basis."""
    ell = domain.ell
    pts = domain.sorted_points(order)
    vectors = {domain.o: {view.identity: Fraction(1) if view.exact else 1.0}}
    for beta in pts:
        if beta == domain.o:
            continue
        i = next(t for t in range(ell) if beta[t] > 0)
        prev = tuple(x - (1 if t == i else 0) for t, x in enumerate(beta))
        vectors[beta] = _mul_gen(view, vectors[prev], domain.label(eps(i, ell)))
    return pts, vectors


def _solve_in_monomial_basis(view, domain, pts, vectors, target):
    """Coefficients d with target = sum_beta d_beta A^beta (vectors over labels)."""
    mat = [[vectors[b].get(domain.label(g), 0) for b in pts] for g in pts]
    rhs = [target.get(domain.label(g), 0) for g in pts]
    if view.exact:
        return ratlin.solve([[Fraction(x) for x in row] for row in mat],
                            [Fraction(x) for x in rhs])
    sol = np.linalg.solve(np.array(mat, dtype=complex),
                          np.array(rhs, dtype=complex))
    return list(sol)


def _family(view, domain, order, with_w=True):
    verdict = _check_structure(view, domain, order)
    if not verdict.holds:
        raise SingularTransition(
            f"structure verdict does not hold: {verdict.violations[:3]}")
    ell = domain.ell
    pts, vectors = _monomial_vectors(view, domain, order)
    v = {}
    for alpha in pts:
        unit = {domain.label(alpha): Fraction(1) if view.exact else 1.0}
        coeffs = _solve_in_monomial_basis(view, domain, pts, vectors, unit)
        v[alpha] = MPoly({b: c for b, c in zip(pts, coeffs)}, ell)
    w = {}
    if with_w:
        for alpha in pts:
            for i in range(ell):
                b = vec_add(alpha, eps(i, ell))
                if b in domain.points:
                    continue
                target = _mul_gen(view, vectors[alpha], domain.label(eps(i, ell)))
                coeffs = _solve_in_monomial_basis(view, domain, pts, vectors, target)
                poly = MPoly.monomial(b) - MPoly(
                    {bb: c for bb, c in zip(pts, coeffs)}, ell)
                if b in w and w[b] != poly:
                    raise ConsistencyFailure(
                        f"boundary polynomial at {b} depends on the route")
                w[b] = poly
    return PolyFamily(v=v, w=w, order=order)


def associated_polynomials(s, domain, order):
    fam = _family(p_view(s), domain, order, with_w=False)
    return fam


def boundary_ideal_generators(s, domain, order):
    return _family(p_view(s), domain, order, with_w=True)


def q_polynomials(s, domain, order, with_w=True):
    return _family(q_view(s), domain, order, with_w=with_w)


def matrix_evaluation_check(s, domain, family):
    """Direct definition check: A_alpha == v_alpha(A_{eps_1},...,A_{eps_ell})."""
    ell = domain.ell
    gens = [s.adjacency(domain.label(eps(i, ell))).astype(object)
            for i in range(ell)]
    for alpha, poly in family.v.items():
        acc = np.zeros((s.n, s.n), dtype=object)
        for m, c in poly.terms.items():
            term = np.eye(s.n, dtype=object) * Fraction(1)
            for g, e in zip(gens, m):
                for _ in range(e):
                    term = term @ g
            acc = acc + term * c
        if not np.array_equal(acc, s.adjacency(domain.label(alpha)).astype(object)
                              * Fraction(1)):
            return False
    return True


# ---------------------------------------------------------------------------
# eigenvalue characterization


def eigen_points(s, domain, side="p"):
    """Theta(j) = generator eigenvalue tuples, one per dual index."""
    e = s.eigen()
    ell = domain.ell
    if side == "p":
        cols = [s.label_pos(domain.label(eps(i, ell))) for i in range(ell)]
        return [tuple(e.P[j][c] for c in cols) for j in range(e.d + 1)]
    cols = [domain.label(eps(i, ell)) for i in range(ell)]
    return [tuple(e.Q[i][c] for c in cols) for i in range(e.d + 1)]


def eigen_consistency(s, domain, order, family=None, side="p"):
    """Check v_alpha(Theta(j)) = P_alpha(j) (resp. Q on the dual side), the
    vanishing of every boundary polynomial on the eigenvalue points, and that
    the point set has full cardinality d+1."""
    e = s.eigen()
    if family is None:
        view = p_view(s) if side == "p" else q_view(s)
        family = _family(view, domain, order, with_w=True)
    pts = eigen_points(s, domain, side=side)
    exact = e.exact

    def close(a, b):
        if exact:
            return a == b
        return abs(complex(a) - complex(b)) < 1e-7

    failures = []
    for alpha, poly in family.v.items():
        for j, theta in enumerate(pts):
            if side == "p":
                expected = e.P[j][s.label_pos(domain.label(alpha))]
            else:
                expected = e.Q[j][domain.label(alpha)]
            if not close(poly.eval(theta), expected):
                failures.append(("value", alpha, j))
    for b, poly in family.w.items():
        for j, theta in enumerate(pts):
            if not close(poly.eval(theta), 0):
                failures.append(("vanish", b, j))
    distinct = len(set(pts)) if exact else len(
        {tuple((round(complex(z).real, 7), round(complex(z).imag, 7))
               for z in p) for p in pts})
    if distinct != e.d + 1:
        failures.append(("cardinality", distinct, e.d + 1))
    if failures:
        raise ConsistencyFailure(f"eigen characterization failed: {failures[:5]}")
    return {"points": pts, "count": distinct, "checks": "ok"}


# ---------------------------------------------------------------------------
# canonical structures from closed subsets


def canonical_elimination_structure(s, closed_members):
    """Reindex I by {o, eps_1..eps_ell} with the closed subset sent to the
    trailing coordinates, under the graded elimination order."""
    members = set(getattr(closed_members, "members", closed_members))
    labels = set(s.labels)
    if members == {s.i0} or members == labels:
        raise TrivialClosedSubset("need a nontrivial closed subset")
    ell = s.d
    split = ell - (len(members) - 1)
    order = ElimGraded(ell, split)
    outside = sorted(labels - members, key=repr)
    inside = sorted(members - {s.i0}, key=repr)
    labeling = {(0,) * ell: s.i0}
    for t, lab in enumerate(outside + inside):
        labeling[eps(t, ell)] = lab
    domain = Domain(ell, frozenset(labeling), labeling)
    verdict = check_p_structure(s, domain, order)
    return domain, order, verdict


def canonical_block_order_structure(s, closed_members):
    """Same reindexing but under a block-composition (grlex | grlex) order;
    the resulting order is certified block type at the split."""
    from .orders import Block, GrLex
    members = set(getattr(closed_members, "members", closed_members))
    labels = set(s.labels)
    if members == {s.i0} or members == labels:
        raise TrivialClosedSubset("need a nontrivial closed subset")
    ell = s.d
    split = ell - (len(members) - 1)
    order = Block(split, GrLex(split), GrLex(ell - split))
    outside = sorted(labels - members, key=repr)
    inside = sorted(members - {s.i0}, key=repr)
    labeling = {(0,) * ell: s.i0}
    for t, lab in enumerate(outside + inside):
        labeling[eps(t, ell)] = lab
    domain = Domain(ell, frozenset(labeling), labeling)
    verdict = check_p_structure(s, domain, order)
    return domain, order, verdict


# ---------------------------------------------------------------------------
# exhaustive search


def _downward_closed_domains(ell, size):
    """All order ideals of N^ell with `size` elements containing all eps_i."""
    base = frozenset([(0,) * ell] + [eps(i, ell) for i in range(ell)])
    if len(base) > size:
        return []
    out = set()
    frontier = {base}
    while frontier:
        nxt = set()
        for ideal in frontier:
            if len(ideal) == size:
                out.add(ideal)
                continue
            # addable points: all predecessors present, coordinates bounded
            candidates = set()
            for p in ideal:
                for i in range(ell):
                    q = tuple(x + (1 if t == i else 0) for t, x in enumerate(p))
                    if q not in ideal and max(q) <= size:
                        candidates.add(q)
            for q in candidates:
                preds_ok = all(
                    tuple(x - (1 if t == i else 0) for t, x in enumerate(q)) in ideal
                    for i in range(ell) if q[i] > 0)
                if preds_ok:
                    nxt.add(ideal | {q})
        frontier = nxt
    return sorted(out, key=lambda d: sorted(d))


def _closure_labels(s, seed_labels):
    """Closure of a label set under transpose and complex products."""
    t = s.tensor()
    pos = {l: i for i, l in enumerate(s.labels)}
    cur = set(seed_labels) | {s.i0}
    changed = True
    while changed:
        changed = False
        cur |= {s.transpose_map[l] for l in cur}
        for a in list(cur):
            for b in list(cur):
                for kp, k in enumerate(s.labels):
                    if k not in cur and t.p[kp][pos[a]][pos[b]] != 0:
                        cur.add(k)
                        changed = True
    return cur


def _search_structures(view, domain_label_pool, identity, domains, order,
                       check, generates):
    results = []
    pool = [l for l in domain_label_pool if l != identity]
    for pts in domains:
        non_gen_pts = sorted(p for p in pts
                             if sum(p) != 1 and p != (0,) * len(next(iter(pts))))
        ell = len(next(iter(pts)))
        gen_pts = [eps(i, ell) for i in range(ell)]
        for gens in itertools.permutations(pool, ell):
            if not generates(gens):
                continue
            rest = [l for l in pool if l not in gens]
            for assign in itertools.permutations(rest, len(non_gen_pts)):
                labeling = {(0,) * ell: identity}
                for g, lab in zip(gen_pts, gens):
                    labeling[g] = lab
                for p, lab in zip(non_gen_pts, assign):
                    labeling[p] = lab
                dom = Domain(ell, frozenset(pts), labeling)
                verdict = check(dom)
                if verdict.holds:
                    results.append((dom, verdict))
    results.sort(key=lambda dv: sorted(
        (p, repr(l)) for p, l in dv[0].labeling.items()))
    return results


def search_p_structure(s, order, ell):
    """All (Domain, verdict) pairs with a holding P-structure at dimension ell.

    Exhaustive over downward-closed domains of size d+1 (order ideals of
    N^ell) and labelings whose generators generate the index set."""
    d1 = s.d + 1
    if d1 > 9:
        raise SearchSpaceTooLarge("search guard: d+1 must be <= 9")
    if ell > 3:
        raise SearchSpaceTooLarge("search guard: ell must be <= 3")
    domains = _downward_closed_domains(ell, d1)
    view = p_view(s)

    def generates(gens):
        return _closure_labels(s, gens) == set(s.labels)

    return _search_structures(
        view, s.labels, s.i0, domains, order,
        lambda dom: _check_structure(view, dom, order), generates)


def search_q_structure(s, order, ell):
    d1 = s.d + 1
    if d1 > 9:
        raise SearchSpaceTooLarge("search guard: d+1 must be <= 9")
    if ell > 3:
        raise SearchSpaceTooLarge("search guard: ell must be <= 3")
    domains = _downward_closed_domains(ell, d1)
    view = q_view(s)
    jlabels = list(view.labels)

    def q_generates(gens):
        cur = {0} | set(gens)
        changed = True
        while changed:
            changed = False
            for a in list(cur):
                for b in list(cur):
                    for k in jlabels:
                        if k not in cur and view.nonzero(view.tensor[k][a][b]):
                            cur.add(k)
                            changed = True
        return cur == set(jlabels)

    return _search_structures(
        view, jlabels, 0, domains, order,
        lambda dom: _check_structure(view, dom, order), q_generates)


def canonical_search_battery(s, side="p"):
    """Census search: the canonical domain {o, eps_1..eps_d} at ell = d under
    every graded elimination split; returns holding structures."""
    d = s.d
    if d < 2:
        return []
    results = []
    for split in range(1, d):
        order = ElimGraded(d, split)
        view = p_view(s) if side == "p" else q_view(s)
        pool = [l for l in view.labels if l != view.identity]
        pts = frozenset([(0,) * d] + [eps(i, d) for i in range(d)])
        for assign in itertools.permutations(pool):
            labeling = {(0,) * d: view.identity}
            for i, lab in enumerate(assign):
                labeling[eps(i, d)] = lab
            dom = Domain(d, pts, labeling)
            verdict = _check_structure(view, dom, order)
            if verdict.holds:
                results.append((dom, order, verdict))
    return results
