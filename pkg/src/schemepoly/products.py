"""Direct and crested products, direct-product recognition, and formal
duality checking.

Product relation labels are flat tuples: the concatenation of the two factor
labels (ints are treated as 1-tuples).  An index map from product label back
to the factor pair is kept on the ProductScheme, and label flattening is
checked to be collision-free.

The crested product of X1 and X2 with respect to closed subsets C1, C2 keeps
A1_i (x) A2_j for i in C1 and collapses the second factor to quotient classes
for i outside C1.  It is always imprimitive: the labels with first component
i0 form a closed subset whose block scheme is X2 and whose quotient is X1.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (NotBijective, NotClosed, PairingNotBijective,
                     SearchSpaceTooLarge, SizeMismatch, TheoremViolation)
from .imprimitivity import (all_closed_subsets, block_scheme, closure,
                            dual_closed_subset, quotient_scheme,
                            _closed_from_members, _find_split)
from .orders import Block, Permuted
from .scheme import FLOAT_TOL, validate_scheme
from .structure import Domain, check_p_structure, check_q_structure


def _flat(tok):
    return tok if isinstance(tok, tuple) else (tok,)


def _pair_label(i, j):
    return _flat(i) + _flat(j)


@dataclass(frozen=True)
class ProductScheme:
    scheme: object
    kind: str                 # "direct" or "crested"
    factors: tuple            # (s1, s2)
    index_map: dict           # product label -> (factor1 label, factor2 token)
    c1: object = None         # ClosedSubset of factor 1 (crested)
    c2: object = None         # ClosedSubset of factor 2 (crested)
    quotient2: object = None  # QuotientData of factor2 by c2 (crested)


def _same_scheme(a, b):
    """Equality of relation partitions with identical label tokens, ignoring
    the declared label order."""
    return (a.n == b.n and set(a.labels) == set(b.labels)
            and all(a.relation(x, y) == b.relation(x, y)
                    for x in range(a.n) for y in range(a.n)))


def direct_product(s1, s2):
    n1, n2 = s1.n, s2.n
    labels = [_pair_label(i, j) for i in s1.labels for j in s2.labels]
    if len(set(labels)) != len(labels):
        raise NotBijective("label flattening collides; relabel a factor")
    index_map = {_pair_label(i, j): (i, j)
                 for i in s1.labels for j in s2.labels}
    mat = [[_pair_label(s1.relation(x1, y1), s2.relation(x2, y2))
            for y1 in range(n1) for y2 in range(n2)]
           for x1 in range(n1) for x2 in range(n2)]
    mode = "exact" if s1.mode == s2.mode == "exact" else "float"
    s = validate_scheme(mat, mode=mode, labels=labels)

    t, t1, t2 = s.tensor(), s1.tensor(), s2.tensor()
    for (k, kk), (i, ii), (j, jj) in itertools.product(index_map.values(),
                                                       repeat=3):
        want = t1.value(k, i, j) * t2.value(kk, ii, jj)
        if t.value(_pair_label(k, kk), _pair_label(i, ii),
                   _pair_label(j, jj)) != want:
            raise TheoremViolation("intersection tensor does not factorize")
    return ProductScheme(scheme=s, kind="direct", factors=(s1, s2),
                         index_map=index_map)


def _as_closed(s, c):
    members = frozenset(getattr(c, "members", c))
    cl = closure(s, members)
    if cl.members != members:
        raise NotClosed(f"{sorted(map(repr, members))} is not closed")
    return cl


def crested_product(s1, c1, s2, c2):
    c1 = _as_closed(s1, c1)
    c2 = _as_closed(s2, c2)
    qd2 = quotient_scheme(s2, c2)
    n1, n2 = s1.n, s2.n

    labels = []
    index_map = {}
    for i in s1.labels:
        if i in c1.members:
            for j in s2.labels:
                labels.append(_pair_label(i, j))
                index_map[labels[-1]] = (i, j)
        else:
            for rep in qd2.scheme.labels:
                labels.append(_pair_label(i, rep))
                index_map[labels[-1]] = (i, rep)
    if len(set(labels)) != len(labels):
        raise NotBijective("label flattening collides; relabel a factor")

    def lab(x1, y1, x2, y2):
        i = s1.relation(x1, y1)
        j = s2.relation(x2, y2)
        if i in c1.members:
            return _pair_label(i, j)
        return _pair_label(i, qd2.label_map[j])

    mat = [[lab(x1, y1, x2, y2)
            for y1 in range(n1) for y2 in range(n2)]
           for x1 in range(n1) for x2 in range(n2)]
    mode = "exact" if s1.mode == s2.mode == "exact" else "float"
    s = validate_scheme(mat, mode=mode, labels=labels)
    prod = ProductScheme(scheme=s, kind="crested", factors=(s1, s2),
                         index_map=index_map, c1=c1, c2=c2, quotient2=qd2)

    # special cases: full C1 or trivial C2 collapse to the direct product
    if c1.members == set(s1.labels) or c2.members == {s2.i0}:
        if not _same_scheme(s, direct_product(s1, s2).scheme):
            raise TheoremViolation("direct-product special case failed")

    # imprimitivity: labels with first component i0 form a closed subset
    cm = frozenset(l for l, (i, _) in index_map.items() if i == s1.i0)
    if closure(s, cm).members != cm:
        raise TheoremViolation("canonical product subset is not closed")
    cprod = _closed_from_members(s, cm)

    # quotient isomorphic to factor 1 (classes enumerate in x1 order)
    qd = quotient_scheme(s, cprod)
    decode1 = {}
    for pl, ql in qd.label_map.items():
        decode1[ql] = index_map[pl][0]
    for x in range(n1):
        for y in range(n1):
            got = decode1[qd.scheme.relation(x, y)]
            if got != s1.relation(x, y):
                raise TheoremViolation("quotient is not the first factor")

    # block at (0, 0) isomorphic to factor 2
    bd = block_scheme(s, cprod, 0)
    for x in range(n2):
        for y in range(n2):
            got = index_map[bd.scheme.relation(x, y)][1]
            if got != s2.relation(x, y):
                raise TheoremViolation("block is not the second factor")
    return prod


# ---------------------------------------------------------------------------
# product structures


def direct_structure(prod, d1, o1, d2, o2):
    """P-structure of a direct product on D1 x D2 under the block-composed
    order (head = first factor's order)."""
    ell1, ell2 = d1.ell, d2.ell
    labeling = {}
    for p1 in d1.points:
        for p2 in d2.points:
            labeling[p1 + p2] = _pair_label(d1.label(p1), d2.label(p2))
    dom = Domain(ell1 + ell2, frozenset(labeling), labeling)
    order = Block(ell1, o1, o2)
    verdict = check_p_structure(prod.scheme, dom, order)
    return dom, order, verdict


def _idempotent_matrix(s, j):
    e = s.eigen()
    acc = np.zeros((s.n, s.n), dtype=object)
    for i in s.labels:
        acc = acc + s.adjacency(i).astype(object) * e.Q[s.label_pos(i)][j]
    return acc * Fraction(1, s.n)


def _match_idempotent(s, mat, cache):
    for j in range(s.d + 1):
        if j not in cache:
            cache[j] = _idempotent_matrix(s, j)
        if np.array_equal(cache[j], mat):
            return j
    raise TheoremViolation("matrix is not a primitive idempotent of the scheme")


def _tail_slice_split(domain, order, members, require):
    """Split position with certified order type and matching tail slice,
    allowing the degenerate splits 0 and ell."""
    ell = domain.ell
    if set(members) == {l for l in domain.labeling.values()}:
        return 0
    origin_label = domain.label(domain.o)
    if set(members) == {origin_label}:
        return ell
    return _find_split(domain, order, members, require=require)


def crested_p_structure(prod, d1, o1, d2, o2):
    """P-structure of a crested product per the elimination/block splits of
    the factor orders."""
    s1, s2 = prod.factors
    ell1, ell2 = d1.ell, d2.ell
    s1split = _tail_slice_split(d1, o1, prod.c1.members, "elimination")
    s2split = _tail_slice_split(d2, o2, prod.c2.members, "block")

    labeling = {}
    for p1 in d1.points:
        if all(x == 0 for x in p1[:s1split]):
            for p2 in d2.points:
                labeling[p1 + p2] = _pair_label(d1.label(p1), d2.label(p2))
        else:
            for p2 in d2.points:
                if any(p2[s2split:]):
                    continue
                labeling[p1 + p2] = _pair_label(
                    d1.label(p1), prod.quotient2.label_map[d2.label(p2)])
    dom = Domain(ell1 + ell2, frozenset(labeling), labeling)
    order = Block(ell1, o1, o2)
    verdict = check_p_structure(prod.scheme, dom, order)
    return dom, order, verdict


def crested_q_structure(prod, d1s, o1s, d2s, o2s):
    """Q-structure of a crested product: idempotents are Kronecker products
    (second factor restricted to the dual closed subset) and class sums over
    the first factor's dual classes; each is matched against the product's
    own primitive idempotents by exact matrix comparison."""
    s1, s2 = prod.factors
    c1s = dual_closed_subset(s1, prod.c1)
    c2s = dual_closed_subset(s2, prod.c2)
    ell1, ell2 = d1s.ell, d2s.ell
    s1split = _tail_slice_split(d1s, o1s, c1s, "block")
    s2split = _tail_slice_split(d2s, o2s, c2s, "elimination")

    e1 = {p: _idempotent_matrix(s1, d1s.label(p)) for p in d1s.points}
    e2 = {p: _idempotent_matrix(s2, d2s.label(p)) for p in d2s.points}

    labeling = {}
    cache = {}
    # first kind: all of D1*, tail of D2* inside C2*
    for p1 in d1s.points:
        for p2 in d2s.points:
            if any(p2[:s2split]):
                continue
            mat = np.kron(e1[p1], e2[p2])
            labeling[p1 + p2] = _match_idempotent(prod.scheme, mat, cache)
    # second kind: class sums over beta, D2* outside C2*
    d1bl = sorted({p[:s1split] for p in d1s.points
                   if all(x == 0 for x in p[s1split:])})
    for alpha in d1bl:
        fiber = [p for p in d1s.points if p[:s1split] == alpha]
        esum = np.zeros((s1.n, s1.n), dtype=object)
        for p in fiber:
            esum = esum + e1[p]
        for p2 in d2s.points:
            if not any(p2[:s2split]):
                continue
            mat = np.kron(esum, e2[p2])
            point = alpha + (0,) * (ell1 - s1split) + p2
            labeling[point] = _match_idempotent(prod.scheme, mat, cache)
    dom = Domain(ell1 + ell2, frozenset(labeling), labeling)
    # compare the second factor's block first, then the first factor's
    perm = list(range(ell1, ell1 + ell2)) + list(range(ell1))
    order = Permuted(perm, Block(ell2, o2s, o1s))
    verdict = check_q_structure(prod.scheme, dom, order)
    return dom, order, verdict


# ---------------------------------------------------------------------------
# direct-product recognition


def recognize_direct_product(s):
    """Search for a factorization X ~ X/C1 (x) X/C2 via complementary closed
    subsets; returns (factor1, factor2, point_map) or None."""
    from .imprimitivity import point_classes
    subs = [c for c in all_closed_subsets(s) if not c.is_trivial(s)]
    for ca, cb in itertools.combinations(subs, 2):
        for c1, c2 in ((ca, cb), (cb, ca)):
            if c1.members & c2.members != {s.i0}:
                continue
            if c1.q * c2.q != s.n:
                continue
            q1 = quotient_scheme(s, c1)
            q2 = quotient_scheme(s, c2)
            idx1, idx2 = {}, {}
            for ci, cls in enumerate(q1.classes):
                for x in cls:
                    idx1[x] = ci
            for ci, cls in enumerate(q2.classes):
                for x in cls:
                    idx2[x] = ci
            f = [idx1[x] * c2.q + idx2[x] for x in range(s.n)]
            if len(set(f)) != s.n:
                continue
            try:
                prod = direct_product(q1.scheme, q2.scheme)
            except NotBijective:
                continue
            ok = all(
                prod.scheme.relation(f[x], f[y])
                == _pair_label(q1.label_map[s.relation(x, y)],
                               q2.label_map[s.relation(x, y)])
                for x in range(s.n) for y in range(s.n))
            if ok:
                return q1.scheme, q2.scheme, tuple(f)
    return None


def full_factorization(s):
    """Recursively split into direct factors; singleton list = irreducible."""
    hit = recognize_direct_product(s)
    if hit is None:
        return [s]
    a, b, _ = hit
    return full_factorization(a) + full_factorization(b)


# ---------------------------------------------------------------------------
# formal duality


@dataclass(frozen=True)
class DualityPairing:
    ij: dict    # label of X -> idempotent index of Y
    ji: dict    # idempotent index of X -> label of Y


def _pairing_check(sX, sY, pairing, tol=FLOAT_TOL):
    eX, eY = sX.eigen(), sY.eigen()
    tX, tY = sX.tensor(), sY.tensor()
    exact = eX.exact and eY.exact

    if (set(pairing.ij) != set(sX.labels)
            or sorted(pairing.ij.values()) != list(range(eY.d + 1))):
        raise PairingNotBijective("I_X -> J_Y map is not a bijection")
    if (set(pairing.ji) != set(range(eX.d + 1))
            or sorted(pairing.ji.values(), key=repr) != sorted(sY.labels, key=repr)):
        raise PairingNotBijective("J_X -> I_Y map is not a bijection")

    def close(a, b):
        if exact:
            return a == b
        return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(b)))

    failures = []
    for k, i, j in itertools.product(sX.labels, repeat=3):
        lhs = tX.value(k, i, j)
        rhs = eY.krein[pairing.ij[k]][pairing.ij[i]][pairing.ij[j]]
        if not close(lhs, rhs):
            failures.append(("p_to_q", k, i, j, lhs, rhs))
    for k, i, j in itertools.product(range(eX.d + 1), repeat=3):
        lhs = eX.krein[k][i][j]
        rhs = tY.value(pairing.ji[k], pairing.ji[i], pairing.ji[j])
        if not close(lhs, rhs):
            failures.append(("q_to_p", k, i, j, lhs, rhs))
    return failures


def find_duality_pairing(sX, sY, tol=FLOAT_TOL):
    """Brute-force search for a formal duality pairing (guarded to d <= 4)."""
    if sX.n != sY.n:
        raise SizeMismatch("formal duality needs |X| = |Y|")
    if sX.d != sY.d:
        return None
    if sX.d + 1 > 5:
        raise SearchSpaceTooLarge("pairing search guard: d+1 must be <= 5")
    eY = sY.eigen()
    otherX = [l for l in sX.labels if l != sX.i0]
    otherYj = [j for j in range(eY.d + 1) if j != 0]
    otherYl = [l for l in sY.labels if l != sY.i0]
    othersXj = [j for j in range(sX.d + 1) if j != 0]
    for pj in itertools.permutations(otherYj):
        ij = {sX.i0: 0, **dict(zip(otherX, pj))}
        for pl in itertools.permutations(otherYl):
            ji = {0: sY.i0, **dict(zip(othersXj, pl))}
            pairing = DualityPairing(ij=ij, ji=ji)
            if not _pairing_check(sX, sY, pairing, tol=tol):
                return pairing
    return None


def formal_duality_check(sX, sY, pairing, tol=FLOAT_TOL, recurse=True, x0=0):
    """Verify that the pairing exchanges intersection and Krein numbers, and
    (on imprimitive inputs) that each block/quotient pair derived from a
    closed subset and its dual image is again formally dual."""
    if sX.n != sY.n:
        raise SizeMismatch("formal duality needs |X| = |Y|")
    failures = _pairing_check(sX, sY, pairing, tol=tol)
    report = {"dual": not failures, "failures": failures[:5], "derived": []}
    if failures or not recurse:
        return report
    for c in all_closed_subsets(sX):
        if c.is_trivial(sX):
            continue
        cstar = dual_closed_subset(sX, c)
        cimage = frozenset(pairing.ji[j] for j in cstar)
        if closure(sY, cimage).members != cimage:
            report["derived"].append(
                {"closed": sorted(map(repr, c.members)),
                 "image_closed": False, "block_vs_quotient": None,
                 "quotient_vs_block": None})
            report["dual"] = False
            continue
        bX = block_scheme(sX, c, x0).scheme
        qY = quotient_scheme(sY, cimage).scheme
        qX = quotient_scheme(sX, c).scheme
        bY = block_scheme(sY, cimage, x0).scheme
        p1 = find_duality_pairing(bX, qY, tol=tol)
        p2 = find_duality_pairing(qX, bY, tol=tol)
        entry = {"closed": sorted(map(repr, c.members)), "image_closed": True,
                 "block_vs_quotient": p1 is not None,
                 "quotient_vs_block": p2 is not None}
        if p1 is None or p2 is None:
            report["dual"] = False
        report["derived"].append(entry)
    return report


def duality_structure_transfer(sX, sY, pairing, domain, order):
    """A P-structure on X induces a Q-structure on its formal dual: relabel
    the domain through the pairing and re-check on the dual scheme."""
    labeling = {p: pairing.ij[domain.label(p)] for p in domain.points}
    dom = Domain(domain.ell, domain.points, labeling)
    return dom, check_q_structure(sY, dom, order)
