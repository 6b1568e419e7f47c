"""Closed subsets, quotient and block schemes, transferred polynomial
structures, and composition series.

A closed subset C of the relation index set induces an equivalence relation
on the ground set; the scheme on the classes is the quotient scheme, the
scheme induced on one class is the block scheme.  When the scheme carries a
multivariate P-polynomial structure whose order is block type at the split
matching C, both descendants inherit explicit polynomial structures:

  - quotient: collapse each head-fiber of D, substitute valencies for the
    tail variables, and rescale the head variables by valency ratios;
  - block: set the head variables to zero.

The mirrored constructions on the Krein side use dual closed subsets,
multiplicities in place of valencies, and idempotent classes.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (DomainSplitMismatch, DualMismatch, OrderNotBlockType,
                     OrderNotEliminationType, TheoremViolation,
                     TooManyClasses, TrivialClosedSubset)
from .mpoly import MPoly, buchberger, normal_form
from .scheme import FLOAT_TOL, validate_scheme
from .structure import (Domain, check_p_structure, check_q_structure, eps,
                        q_polynomials, _closure_labels, _family, p_view,
                        q_view)


@dataclass(frozen=True)
class ClosedSubset:
    members: frozenset
    p: int      # block size
    q: int      # number of blocks

    def is_trivial(self, s):
        return self.members == {s.i0} or self.members == set(s.labels)

    def __contains__(self, label):
        return label in self.members


def _closed_from_members(s, members):
    t = s.tensor()
    p = sum(t.valencies[l] for l in members)
    if s.n % p:
        raise TheoremViolation("block size does not divide |X|")
    return ClosedSubset(frozenset(members), p, s.n // p)


def closure(s, seed):
    """Smallest closed subset containing the seed labels."""
    return _closed_from_members(s, _closure_labels(s, set(seed)))


def all_closed_subsets(s):
    """Every closed subset, via singleton closures and pairwise joins."""
    if s.d + 1 > 20:
        raise TooManyClasses("enumeration guard: d+1 must be <= 20")
    found = {frozenset(_closure_labels(s, {l})) for l in s.labels}
    found.add(frozenset({s.i0}))
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(list(found), 2):
            j = frozenset(_closure_labels(s, a | b))
            if j not in found:
                found.add(j)
                changed = True
    out = [_closed_from_members(s, m) for m in found]
    out.sort(key=lambda c: (len(c.members), sorted(map(repr, c.members))))
    return out


def is_imprimitive(s):
    return len(all_closed_subsets(s)) > 2


def dual_closed_subset(s, c):
    """C* ⊆ J by the eigenvalue criterion P_i(j) = k_i (i in C), cross-checked
    against the idempotent-sum expansion of the class-averaging matrix and
    the involution on the Krein side."""
    e = s.eigen()
    t = s.tensor()
    exact = e.exact
    members = c.members if isinstance(c, ClosedSubset) else frozenset(c)
    c = c if isinstance(c, ClosedSubset) else _closed_from_members(s, members)

    def eq(a, b, scale=1):
        if exact:
            return a == b
        return abs(complex(a) - complex(b)) <= FLOAT_TOL * max(1.0, abs(scale))

    cstar = frozenset(
        j for j in range(e.d + 1)
        if all(eq(e.P[j][s.label_pos(i)], t.valencies[i], t.valencies[i])
               for i in members))

    # cross-check: (1/p) sum_{i in C} P_i(j) must be 1 on C*, 0 elsewhere
    for j in range(e.d + 1):
        coeff = sum(e.P[j][s.label_pos(i)] for i in members) / (
            Fraction(c.p) if exact else c.p)
        want = 1 if j in cstar else 0
        if not eq(coeff, want):
            raise DualMismatch(
                f"eigenvalue and idempotent-sum criteria disagree at j={j}")

    # involution: recover C from C* via the Q-side criterion
    back = frozenset(
        i for i in s.labels
        if all(eq(e.Q[s.label_pos(i)][j], e.multiplicities[j],
                  e.multiplicities[j]) for j in cstar))
    if back != members:
        raise DualMismatch("dual of the dual does not return the closed subset")
    if exact and sum(e.multiplicities[j] for j in cstar) != c.q:
        raise DualMismatch("multiplicities over C* do not sum to the block count")
    return cstar


def j_equivalence_classes(s, cstar):
    """Classes of the relation j ~ j' iff q^{j'}_{j,h} != 0 for some h in C*."""
    e = s.eigen()
    view = q_view(s)
    classes = []
    seen = set()
    for j in range(e.d + 1):
        if j in seen:
            continue
        cls = frozenset(
            j2 for j2 in range(e.d + 1)
            if any(view.nonzero(e.krein[j2][j][h]) for h in cstar))
        classes.append(cls)
        seen |= cls
    return sorted(classes, key=sorted)


def point_classes(s, c):
    """Equivalence classes of the ground set under R in C."""
    members = c.members if isinstance(c, ClosedSubset) else frozenset(c)
    pos_in_c = {s.label_pos(l) for l in members}
    seen = [False] * s.n
    classes = []
    for x in range(s.n):
        if seen[x]:
            continue
        cls = tuple(y for y in range(s.n) if int(s.rel[x, y]) in pos_in_c)
        for y in cls:
            seen[y] = True
        classes.append(cls)
    return classes


@dataclass(frozen=True)
class QuotientData:
    scheme: object
    closed: ClosedSubset
    classes: tuple         # point classes, each a tuple of original points
    label_map: dict        # original label -> quotient label


@dataclass(frozen=True)
class BlockData:
    scheme: object
    closed: ClosedSubset
    x0: int
    points: tuple          # original points forming the block


def _class_label(s, label_class):
    if s.i0 in label_class:
        return s.i0
    from .scheme import _label_key
    return min(label_class, key=_label_key)


def quotient_scheme(s, c):
    members = c.members if isinstance(c, ClosedSubset) else frozenset(c)
    c = c if isinstance(c, ClosedSubset) else _closed_from_members(s, members)
    classes = point_classes(s, c)
    if any(len(cls) != c.p for cls in classes):
        raise TheoremViolation("point classes have unequal sizes")
    reps = [cls[0] for cls in classes]
    # label classes iC: labels seen between a fixed pair of point classes
    label_class = {}
    for l in s.labels:
        if l in label_class:
            continue
        xs, ys = (s.rel == s.label_pos(l)).nonzero()
        x, y = int(xs[0]), int(ys[0])
        cx = next(cls for cls in classes if x in cls)
        cy = next(cls for cls in classes if y in cls)
        seen = frozenset(s.labels[s.rel[a, b]] for a in cx for b in cy)
        for l2 in seen:
            label_class[l2] = seen
    label_map = {l: _class_label(s, label_class[l]) for l in s.labels}
    mat = [[label_map[s.labels[s.rel[x, y]]] for y in reps] for x in reps]
    qlabels = sorted(set(label_map.values()),
                     key=lambda l: (l != label_map[s.i0], repr(l)))
    qs = validate_scheme(mat, mode=s.mode, labels=qlabels)
    return QuotientData(scheme=qs, closed=c, classes=tuple(map(tuple, classes)),
                        label_map=label_map)


def block_scheme(s, c, x0=0):
    members = c.members if isinstance(c, ClosedSubset) else frozenset(c)
    c = c if isinstance(c, ClosedSubset) else _closed_from_members(s, members)
    cls = next(cl for cl in point_classes(s, c) if x0 in cl)
    mat = [[s.labels[s.rel[x, y]] for y in cls] for x in cls]
    blabels = sorted(members, key=lambda l: (l != s.i0, repr(l)))
    bs = validate_scheme(mat, mode=s.mode, labels=blabels)
    return BlockData(scheme=bs, closed=c, x0=x0, points=tuple(cls))


# ---------------------------------------------------------------------------
# eigen transfer checks (exact mode)


def match_quotient_eigen(s, c, qdata):
    """Map each j in C* to the quotient idempotent with the averaged
    eigenvalue row; verifies the P/Q transfer equations and the valency
    relation on the way."""
    e = s.eigen()
    qe = qdata.scheme.eigen()
    cstar = dual_closed_subset(s, c)
    tv = s.tensor().valencies
    qtv = qdata.scheme.tensor().valencies
    qlabels = qdata.scheme.labels
    members = c.members
    mapping = {}
    for j in sorted(cstar):
        expected = []
        for ql in qlabels:
            fiber = [i for i in s.labels if qdata.label_map[i] == ql]
            expected.append(sum(e.P[j][s.label_pos(i)] for i in fiber)
                            / Fraction(c.p))
        matches = [jq for jq in range(qe.d + 1)
                   if list(qe.P[jq]) == expected]
        if len(matches) != 1:
            raise TheoremViolation(f"quotient eigen row for j={j} not unique")
        jq = matches[0]
        mapping[j] = jq
        if qe.multiplicities[jq] != e.multiplicities[j]:
            raise TheoremViolation("quotient multiplicity transfer failed")
        # Q^qt_j(iC) = Q_j(i)
        for i in s.labels:
            ql = qdata.label_map[i]
            if qe.Q[qdata.scheme.label_pos(ql)][jq] != e.Q[s.label_pos(i)][j]:
                raise TheoremViolation("second-eigenmatrix transfer failed")
        # valency relation P_i(j)/k_i = P^qt_iC(j)/k_iC
        for i in s.labels:
            ql = qdata.label_map[i]
            lhs = e.P[j][s.label_pos(i)] / Fraction(tv[i])
            rhs = qe.P[jq][qdata.scheme.label_pos(ql)] / Fraction(qtv[ql])
            if lhs != rhs:
                raise TheoremViolation("valency relation failed on C*")
    if len(set(mapping.values())) != qe.d + 1:
        raise TheoremViolation("C* does not exhaust the quotient idempotents")
    return mapping


def match_block_eigen(s, c, bdata):
    """Map each idempotent class of J/C* to the block idempotent with the
    restricted eigenvalue row."""
    e = s.eigen()
    be = bdata.scheme.eigen()
    cstar = dual_closed_subset(s, c)
    jclasses = j_equivalence_classes(s, cstar)
    blabels = bdata.scheme.labels
    mapping = {}
    for cls in jclasses:
        j = sorted(cls)[0]
        expected = [e.P[j][s.label_pos(i)] for i in blabels]
        for j2 in cls:  # representative independence
            row = [e.P[j2][s.label_pos(i)] for i in blabels]
            if row != expected:
                raise TheoremViolation(
                    "block eigen row depends on the class representative")
        matches = [jb for jb in range(be.d + 1) if list(be.P[jb]) == expected]
        if len(matches) != 1:
            raise TheoremViolation(f"block eigen row for class {sorted(cls)} "
                                   "not unique")
        jb = matches[0]
        mapping[cls] = jb
        msum = sum(e.multiplicities[j2] for j2 in cls)
        if be.multiplicities[jb] * c.q != msum:
            raise TheoremViolation("block multiplicity transfer failed")
    if len(set(mapping.values())) != be.d + 1:
        raise TheoremViolation("J/C* does not exhaust the block idempotents")
    return mapping


# ---------------------------------------------------------------------------
# structure transfer


def _find_split(domain, order, c_members, require="block"):
    ell = domain.ell
    for split in range(1, ell):
        ok = (order.is_certified_block(split) if require == "block"
              else order.is_certified_elimination(split))
        if not ok:
            continue
        tail_labels = {domain.label(p) for p in domain.points
                       if all(x == 0 for x in p[:split])}
        if tail_labels == set(c_members):
            return split
    # distinguish the two failure modes for better errors
    for split in range(1, ell):
        tail_labels = {domain.label(p) for p in domain.points
                       if all(x == 0 for x in p[:split])}
        if tail_labels == set(c_members):
            raise (OrderNotBlockType if require == "block"
                   else OrderNotEliminationType)(
                f"order is not certified {require} type at split {split}")
    raise DomainSplitMismatch(
        "closed subset does not match any tail slice of the domain")


def quotient_structure(s, domain, order, c):
    """Transferred P-structure on the quotient scheme: the fiber-sum, valency
    substitution, and rescaling route."""
    members = c.members if isinstance(c, ClosedSubset) else frozenset(c)
    c = c if isinstance(c, ClosedSubset) else _closed_from_members(s, members)
    if c.is_trivial(s):
        raise TrivialClosedSubset("need a nontrivial closed subset")
    ell = domain.ell
    split = _find_split(domain, order, members, require="block")
    fam = _family(p_view(s), domain, order, with_w=False)
    tv = s.tensor().valencies

    qdata = quotient_scheme(s, c)
    qtv = qdata.scheme.tensor().valencies

    head = list(range(split))
    tail = list(range(split, ell))
    order_s = order.induced(head)

    d_s = sorted({p[:split] for p in domain.points
                  if all(x == 0 for x in p[split:])})
    labeling = {}
    for alpha in d_s:
        full = alpha + (0,) * (ell - split)
        labeling[alpha] = qdata.label_map[domain.label(full)]
    qdomain = Domain(split, frozenset(d_s), labeling)
    verdict = check_p_structure(qdata.scheme, qdomain, order_s)

    # polynomial route
    tail_subs = {t: Fraction(tv[domain.label(eps(t, ell))]) for t in tail}
    head_factors = {
        i: Fraction(tv[domain.label(eps(i, ell))],
                    qtv[qdata.label_map[domain.label(eps(i, ell))]])
        for i in head}
    vqt = {}
    for alpha in d_s:
        fiber = [p for p in domain.points if p[:split] == alpha]
        vtilde = MPoly.zero(ell)
        for p in fiber:
            vtilde = vtilde + fam.v[p]
        u = vtilde.subs({t: MPoly.const(cst, ell) for t, cst in tail_subs.items()})
        u = u.restrict(head)
        if u.terms.get(alpha, 0) == 0:
            raise TheoremViolation(
                f"leading coefficient of u_{alpha} vanished")
        scaled = u.subs({i: head_factors[i] * MPoly.var(i, split)
                         for i in range(split)})
        vqt[alpha] = scaled * Fraction(1, c.p)

    # the transferred polynomials must be the quotient's own family
    qfam = _family(p_view(qdata.scheme), qdomain, order_s, with_w=False)
    for alpha in d_s:
        if vqt[alpha] != qfam.v[alpha]:
            raise TheoremViolation(
                f"transferred quotient polynomial at {alpha} mismatches: "
                f"{vqt[alpha].render()} vs {qfam.v[alpha].render()}")
    return qdomain, order_s, vqt, verdict, qdata


def block_structure(s, domain, order, c, x0=0):
    """Transferred P-structure on the block scheme: zero-specialization of
    the head variables."""
    members = c.members if isinstance(c, ClosedSubset) else frozenset(c)
    c = c if isinstance(c, ClosedSubset) else _closed_from_members(s, members)
    if c.is_trivial(s):
        raise TrivialClosedSubset("need a nontrivial closed subset")
    ell = domain.ell
    split = _find_split(domain, order, members, require="block")
    fam = _family(p_view(s), domain, order, with_w=False)

    bdata = block_scheme(s, c, x0)
    head = list(range(split))
    tail = list(range(split, ell))
    order_bl = order.induced(tail)

    d_bl = sorted({p[split:] for p in domain.points
                   if all(x == 0 for x in p[:split])})
    labeling = {beta: domain.label((0,) * split + beta) for beta in d_bl}
    bdomain = Domain(ell - split, frozenset(d_bl), labeling)
    verdict = check_p_structure(bdata.scheme, bdomain, order_bl)

    vbl = {}
    for beta in d_bl:
        poly = fam.v[(0,) * split + beta]
        poly = poly.subs({i: MPoly.const(0, ell) for i in head})
        vbl[beta] = poly.restrict(tail)

    bfam = _family(p_view(bdata.scheme), bdomain, order_bl, with_w=False)
    for beta in d_bl:
        if vbl[beta] != bfam.v[beta]:
            raise TheoremViolation(
                f"transferred block polynomial at {beta} mismatches")
    return bdomain, order_bl, vbl, verdict, bdata


def q_side_structures(s, domain_star, order_star, cstar, x0=0):
    """Mirrored transfers on the Krein side.

    The quotient scheme inherits a Q-structure by zero-specialization (the
    order must be elimination type at the split), the block scheme by the
    fiber-sum/multiplicity-rescaling route (block type at the split).
    Returns a dict with whichever sides the order certificates allow.
    """
    e = s.eigen()
    cstar = frozenset(cstar)
    if cstar == {0} or cstar == set(range(e.d + 1)):
        raise DomainSplitMismatch("need a nontrivial dual closed subset")
    ell = domain_star.ell
    # primal closed subset C = {i : Q_j(i) = m_j for all j in C*}
    members = frozenset(
        i for i in s.labels
        if all(e.Q[s.label_pos(i)][j] == e.multiplicities[j] for j in cstar))
    c = _closed_from_members(s, members)
    if dual_closed_subset(s, c) != cstar:
        raise DualMismatch("dual closed subset is inconsistent")
    out = {}

    qfam = q_polynomials(s, domain_star, order_star, with_w=False)

    # quotient side: elimination split
    try:
        split = _find_split(domain_star, order_star, cstar, require="elimination")
    except (OrderNotEliminationType, DomainSplitMismatch):
        split = None
    if split is not None:
        qdata = quotient_scheme(s, c)
        mapping = match_quotient_eigen(s, c, qdata)
        tail = list(range(split, ell))
        d_qt = sorted({p[split:] for p in domain_star.points
                       if all(x == 0 for x in p[:split])})
        labeling = {beta: mapping[domain_star.label((0,) * split + beta)]
                    for beta in d_qt}
        dom = Domain(ell - split, frozenset(d_qt), labeling)
        order_qt = order_star.induced(tail)
        verdict = check_q_structure(qdata.scheme, dom, order_qt)
        vqt = {}
        for beta in d_qt:
            poly = qfam.v[(0,) * split + beta]
            poly = poly.subs({i: MPoly.const(0, ell) for i in range(split)})
            vqt[beta] = poly.restrict(tail)
        out["quotient"] = {"domain": dom, "order": order_qt, "v": vqt,
                           "verdict": verdict, "data": qdata}

    # block side: block split
    try:
        split = _find_split(domain_star, order_star, cstar, require="block")
    except (OrderNotBlockType, DomainSplitMismatch):
        split = None
    if split is not None:
        bdata = block_scheme(s, c, x0)
        mapping = match_block_eigen(s, c, bdata)
        cls_of = {}
        for cls, jb in mapping.items():
            for j in cls:
                cls_of[j] = jb
        head = list(range(split))
        d_bl = sorted({p[:split] for p in domain_star.points
                       if all(x == 0 for x in p[split:])})
        labeling = {alpha: cls_of[domain_star.label(
            alpha + (0,) * (ell - split))] for alpha in d_bl}
        dom = Domain(split, frozenset(d_bl), labeling)
        order_bl = order_star.induced(head)
        verdict = check_q_structure(bdata.scheme, dom, order_bl)

        be = bdata.scheme.eigen()
        mult = e.multiplicities
        bmult = be.multiplicities
        gen_factors = {
            i: Fraction(mult[domain_star.label(eps(i, ell))],
                        bmult[cls_of[domain_star.label(eps(i, ell))]])
            for i in head}
        tail_subs = {t: Fraction(mult[domain_star.label(eps(t, ell))])
                     for t in range(split, ell)}
        vbl = {}
        for alpha in d_bl:
            fiber = [p for p in domain_star.points if p[:split] == alpha]
            vtilde = MPoly.zero(ell)
            for p in fiber:
                vtilde = vtilde + qfam.v[p]
            u = vtilde.subs({t: MPoly.const(cst, ell)
                             for t, cst in tail_subs.items()}).restrict(head)
            scaled = u.subs({i: gen_factors[i] * MPoly.var(i, split)
                             for i in range(split)})
            vbl[alpha] = scaled * Fraction(1, c.q)
        bqfam = _family(q_view(bdata.scheme), dom, order_bl, with_w=False)
        for alpha in d_bl:
            if vbl[alpha] != bqfam.v[alpha]:
                raise TheoremViolation(
                    f"transferred block Q-polynomial at {alpha} mismatches")
        out["block"] = {"domain": dom, "order": order_bl, "v": vbl,
                        "verdict": verdict, "data": bdata}
    if not out:
        raise DomainSplitMismatch(
            "order certificates allow neither transfer direction")
    return out


# ---------------------------------------------------------------------------
# composition series


def _maximal_closed_below(lattice, top):
    below = [c for c in lattice if c.members < top.members]
    out = []
    for c in below:
        if not any(c.members < c2.members < top.members for c2 in below):
            out.append(c)
    return out


def composition_series(s, x0=0):
    """All maximal chains I = C_0 > C_1 > ... > C_t = {i0} with the factor
    schemes (block at stage r, quotient by the next stage) and the per-stage
    ideal chain data."""
    lattice = all_closed_subsets(s)
    full = next(c for c in lattice if c.members == set(s.labels))
    chains = []

    def dfs(chain):
        cur = chain[-1]
        if cur.members == {s.i0}:
            chains.append(list(chain))
            return
        for nxt in _maximal_closed_below(lattice, cur):
            dfs(chain + [nxt])

    dfs([full])
    chains.sort(key=lambda ch: [sorted(map(repr, c.members)) for c in ch])

    results = []
    for chain in chains:
        stages = []
        for r in range(len(chain) - 1):
            c_r, c_next = chain[r], chain[r + 1]
            bdata = block_scheme(s, c_r, x0)
            bsch = bdata.scheme
            inner = _closed_from_members(bsch, c_next.members)
            factor = quotient_scheme(bsch, inner)
            stages.append({"block": bdata, "factor": factor.scheme,
                           "closed": c_r, "next": c_next})
        results.append({"chain": chain, "stages": stages})
    return results


def composition_ideal_chain(s, chain, x0=0):
    """Per-stage boundary ideals J_r of the block schemes (canonical domain,
    graded elimination order split at the next chain element), the
    elimination route for J_{r+1}, and the inclusion check of J_{r+1}
    (re-expressed in stage-r tail variables) into J_r."""
    from .mpoly import elimination_ideal, GroebnerBasis
    from .orders import GrLex
    from .structure import canonical_elimination_structure, boundary_ideal_generators

    stages = []
    for r in range(len(chain) - 1):
        c_r, c_next = chain[r], chain[r + 1]
        bdata = block_scheme(s, c_r, x0)
        bsch = bdata.scheme
        if c_next.members == {s.i0}:
            # degenerate last stage: plain graded structure, no tail block
            ell = bsch.d
            labeling = {(0,) * ell: bsch.i0}
            others = sorted(set(bsch.labels) - {bsch.i0}, key=repr)
            for t, lab in enumerate(others):
                labeling[eps(t, ell)] = lab
            domain = Domain(ell, frozenset(labeling), labeling)
            order = GrLex(ell)
        else:
            domain, order, verdict = canonical_elimination_structure(
                bsch, c_next.members)
            if not verdict.holds:
                raise TheoremViolation("canonical elimination structure failed")
        fam = boundary_ideal_generators(bsch, domain, order)
        gb = buchberger(list(fam.generators), order)
        stages.append({"scheme": bsch, "domain": domain, "order": order,
                       "ideal": gb})

    for r in range(len(stages) - 1):
        cur, nxt = stages[r], stages[r + 1]
        ell_r = cur["domain"].ell
        split = ell_r - (len(chain[r + 1].members) - 1)
        # elimination route inside stage r
        elim = elimination_ideal(cur["ideal"], split)
        # stage r+1 generators re-expressed in stage-r tail variables
        var_of_label = {cur["domain"].label(eps(t, ell_r)): t - split
                        for t in range(split, ell_r)}
        moved = []
        ell_next = nxt["domain"].ell
        for g in nxt["ideal"].generators:
            perm = [var_of_label[nxt["domain"].label(eps(t, ell_next))]
                    for t in range(ell_next)]
            moved.append(g.permute_vars(perm))
        # the two routes must generate the same ideal
        tail_order = GrLex(ell_r - split)
        route_a = buchberger(list(elim.generators), tail_order)
        route_b = buchberger(moved, tail_order)
        if route_a.generators != route_b.generators:
            raise TheoremViolation(
                f"stage {r}: elimination ideal does not match the next "
                "stage's boundary ideal")
        # inclusion J_{r+1} T_r ⊆ J_r: embed and reduce
        for g in moved:
            emb = g.embed(ell_r, list(range(split, ell_r)))
            if not normal_form(emb, list(cur["ideal"].generators),
                               cur["order"]).is_zero():
                raise TheoremViolation(
                    f"stage {r}: next-stage generator is not in the ideal")
    return stages
