"""Constructors for the example scheme families and standard test schemes.

Each family builds its relation matrix from first principles and runs it
through full validation.  Where a canonical bivariate labeling exists
(complete multipartite, nonbinary Johnson, bipartite/antipodal distance
schemes), the entry also carries the matching Domain and monomial order.
"""

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParameters, NotDistanceRegular
from .mpoly import MPoly
from .orders import Lex
from .scheme import validate_scheme
from .structure import Domain, check_p_structure, eps


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))


@dataclass(frozen=True)
class CatalogEntry:
    scheme: object
    domain: object = None     # canonical Domain, when one exists
    order: object = None      # matching monomial order
    notes: str = ""


def trivial():
    return CatalogEntry(validate_scheme([[0]]))


def complete(n):
    if n < 2:
        raise BadParameters("complete graph needs n >= 2")
    mat = [[0 if x == y else 1 for y in range(n)] for x in range(n)]
    return CatalogEntry(validate_scheme(mat, labels=[0, 1]))


def complete_multipartite(m, r):
    """m parts of size r; labels (0,0) identity, (1,0) across parts,
    (0,1) within a part."""
    if m < 2 or r < 2:
        raise BadParameters("complete multipartite needs m, r >= 2")
    n = m * r
    same, across, ident = (0, 1), (1, 0), (0, 0)
    mat = [[ident if x == y else (same if x // r == y // r else across)
            for y in range(n)] for x in range(n)]
    s = validate_scheme(mat, labels=[ident, across, same])
    labeling = {(0, 0): ident, (1, 0): across, (0, 1): same}
    domain = Domain(2, frozenset(labeling), labeling)
    return CatalogEntry(s, domain=domain, order=Lex(2),
                        notes=f"complete multipartite m={m}, r={r}")


def hamming(k, q):
    if k < 1 or q < 2:
        raise BadParameters("hamming needs k >= 1, q >= 2")
    pts = list(itertools.product(range(q), repeat=k))
    mat = [[sum(a != b for a, b in zip(x, y)) for y in pts] for x in pts]
    return CatalogEntry(validate_scheme(mat, labels=list(range(k + 1))),
                        notes=f"hamming k={k}, q={q}")


def johnson(n, k):
    if not 1 <= k < n:
        raise BadParameters("johnson needs 1 <= k < n")
    pts = list(itertools.combinations(range(n), k))
    mat = [[k - len(set(x) & set(y)) for y in pts] for x in pts]
    d = min(k, n - k)
    return CatalogEntry(validate_scheme(mat, labels=list(range(d + 1))),
                        notes=f"johnson n={n}, k={k}")


def nonbinary_johnson(r, k, n):
    """Words of weight k over {0..r-1}^n; relation (i, j) determined by
    |supp(x) ∩ supp(y)| = k - i and |{t : x_t = y_t != 0}| = k - i - j."""
    if r < 3 or not 1 <= k < n:
        raise BadParameters("nonbinary johnson needs r >= 3 and 1 <= k < n")
    pts = [w for w in itertools.product(range(r), repeat=n)
           if sum(1 for a in w if a) == k]

    def rel(x, y):
        common = sum(1 for a, b in zip(x, y) if a and b)
        equal = sum(1 for a, b in zip(x, y) if a and a == b)
        i = k - common
        j = common - equal
        return (i, j)

    labels = [(i, j) for i in range(min(k, n - k) + 1) for j in range(k - i + 1)]
    mat = [[rel(x, y) for y in pts] for x in pts]
    s = validate_scheme(mat, labels=labels)
    labeling = {(i, j): (i, j) for (i, j) in labels}
    domain = Domain(2, frozenset(labeling), labeling)
    return CatalogEntry(s, domain=domain, order=Lex(2),
                        notes=f"nonbinary johnson r={r}, k={k}, n={n}")


def cyclic_group(n):
    if n < 2:
        raise BadParameters("cyclic group needs n >= 2")
    mat = [[(y - x) % n for y in range(n)] for x in range(n)]
    # characters of Z_n are n-th roots of unity: rational only for n <= 2
    mode = "exact" if n <= 2 else "float"
    return CatalogEntry(validate_scheme(mat, labels=list(range(n)), mode=mode),
                        notes=f"cyclic group Z_{n}")


# -- graph-distance schemes ---------------------------------------------------


def _bfs_distance_matrix(adj):
    n = len(adj)
    dist = [[-1] * n for _ in range(n)]
    for src in range(n):
        dist[src][src] = 0
        dq = deque([src])
        while dq:
            u = dq.popleft()
            for v in range(n):
                if adj[u][v] and dist[src][v] < 0:
                    dist[src][v] = dist[src][u] + 1
                    dq.append(v)
        if any(d < 0 for d in dist[src]):
            raise BadParameters("graph is not connected")
    return dist


def graph_distance(name, *params):
    """Distance scheme of a named graph: hypercube(d), cycle(n),
    petersen, complete(n)."""
    if name == "hypercube":
        (d,) = params
        pts = list(itertools.product((0, 1), repeat=d))
        adj = [[1 if sum(a != b for a, b in zip(x, y)) == 1 else 0
                for y in pts] for x in pts]
    elif name == "cycle":
        (n,) = params
        adj = [[1 if (x - y) % n in (1, n - 1) else 0 for y in range(n)]
               for x in range(n)]
    elif name == "petersen":
        pts = list(itertools.combinations(range(5), 2))
        adj = [[1 if not set(x) & set(y) else 0 for y in pts] for x in pts]
    elif name == "complete":
        (n,) = params
        adj = [[0 if x == y else 1 for y in range(n)] for x in range(n)]
    else:
        raise BadParameters(f"unknown graph {name!r}")
    dist = _bfs_distance_matrix(adj)
    diam = max(max(row) for row in dist)
    s = validate_scheme(dist, labels=list(range(diam + 1)))
    return CatalogEntry(s, notes=f"distance scheme of {name}{params}")


FAMILIES = {
    "trivial": lambda: trivial(),
    "complete": lambda n: complete(n),
    "complete_multipartite": lambda m, r: complete_multipartite(m, r),
    "hamming": lambda k, q: hamming(k, q),
    "johnson": lambda n, k: johnson(n, k),
    "nonbinary_johnson": lambda r, k, n: nonbinary_johnson(r, k, n),
    "cyclic_group": lambda n: cyclic_group(n),
    "graph_distance": lambda name, *p: graph_distance(name, *p),
}


def make_named_scheme(spec):
    if isinstance(spec, FamilySpec):
        family, params = spec.family, spec.params
    else:
        family, params = spec
    if family not in FAMILIES:
        raise BadParameters(f"unknown family {family!r}")
    return FAMILIES[family](*params)


# -- distance-regular bivariate structures ------------------------------------


def intersection_array(s):
    """(a_i, b_i, c_i) from a distance scheme with labels 0..d; raises
    NotDistanceRegular if the three-term recurrence fails."""
    d = s.d
    if tuple(s.labels) != tuple(range(d + 1)):
        raise NotDistanceRegular("labels must be distances 0..d")
    t = s.tensor()
    for i in range(d + 1):
        for k in range(d + 1):
            if t.p[k][1][i] and abs(k - i) > 1:
                raise NotDistanceRegular(
                    f"A_1 A_{i} hits A_{k}: not a distance-regular scheme")
    a = [t.p[i][1][i] for i in range(d + 1)]
    b = [t.p[i][1][i + 1] if i < d else 0 for i in range(d + 1)]
    c = [t.p[i][1][i - 1] if i > 0 else 0 for i in range(d + 1)]
    if any(c[i] == 0 for i in range(1, d + 1)):
        raise NotDistanceRegular("invalid intersection array")
    return a, b, c


def distance_polynomials(s):
    """Univariate v_i with A_i = v_i(A_1), via the three-term recurrence."""
    a, b, c = intersection_array(s)
    d = s.d
    v = [MPoly.const(1, 1), MPoly.var(0, 1)]
    x = MPoly.var(0, 1)
    for i in range(1, d):
        nxt = (x * v[i] - a[i] * v[i] - b[i - 1] * v[i - 1]) * Fraction(1, c[i + 1])
        v.append(nxt)
    return v


def bipartite_fg_polynomials(s):
    """The even/odd decomposition f_j, g_j (univariate, variable t)."""
    a, b, c = intersection_array(s)
    if any(a):
        raise NotDistanceRegular("scheme is not bipartite")
    d = s.d
    m, mp = d // 2, (d - 1) // 2
    k = b[0]
    t = MPoly.var(0, 1)
    f = [MPoly.const(1, 1), t]
    g = [MPoly.const(1, 1)]
    for j in range(1, m + 1):
        if j >= 2:
            fj = ((k + c[2] * t) * g[j - 1] - b[2 * j - 2] * f[j - 1]) \
                * Fraction(1, c[2 * j])
            f.append(fj)
        if 2 * j + 1 <= d and j <= mp:
            gj = (f[j] - b[2 * j - 1] * g[j - 1]) * Fraction(1, c[2 * j + 1])
            g.append(gj)
    return f[:m + 1], g[:mp + 1]


def drg_bivariate_structures(s):
    """Bipartite and/or antipodal bivariate structures of a distance scheme.

    Returns a dict with keys "bipartite" and/or "antipodal"; each value holds
    the Domain, the 1-block lex order, the recursive polynomial family, and
    the structure verdict.
    """
    from .imprimitivity import closure
    a, b, c = intersection_array(s)
    d = s.d
    if d < 2:
        raise NotDistanceRegular("diameter must be at least 2")
    m, mp = d // 2, (d - 1) // 2
    order = Lex(2)
    out = {}

    if not any(a):  # bipartite
        labeling = {}
        for j in range(m + 1):
            labeling[(0, j)] = 2 * j
        for j in range(mp + 1):
            labeling[(1, j)] = 2 * j + 1
        domain = Domain(2, frozenset(labeling), labeling)
        f, g = bipartite_fg_polynomials(s)
        x1, x2 = MPoly.var(0, 2), MPoly.var(1, 2)
        v = {}
        for j in range(m + 1):
            v[(0, j)] = f[j].subs({0: x2})
        for j in range(mp + 1):
            v[(1, j)] = x1 * g[j].subs({0: x2})
        verdict = check_p_structure(s, domain, order)
        out["bipartite"] = {
            "domain": domain, "order": order, "v": v, "verdict": verdict,
            "closed_subset": frozenset(range(0, d + 1, 2)), "f": f, "g": g}

    anti = closure(s, {d}).members
    if anti == frozenset({0, d}):  # antipodal
        labeling = {}
        for j in range(m + 1):
            labeling[(j, 0)] = j
        for j in range(mp + 1):
            labeling[(j, 1)] = d - j
        domain = Domain(2, frozenset(labeling), labeling)
        x1, x2 = MPoly.var(0, 2), MPoly.var(1, 2)
        vd = distance_polynomials(s)
        v = {}
        for j in range(m + 1):
            v[(j, 0)] = vd[j].subs({0: x1})
        prev2, prev1 = MPoly.zero(2), x2
        v[(0, 1)] = x2
        for j in range(1, mp + 1):
            cur = (x1 * prev1 - a[d - j + 1] * prev1
                   - (c[d - j + 2] if d - j + 2 <= d else 0) * prev2) \
                * Fraction(1, b[d - j])
            v[(j, 1)] = cur
            prev2, prev1 = prev1, cur
        verdict = check_p_structure(s, domain, order)
        out["antipodal"] = {
            "domain": domain, "order": order, "v": v, "verdict": verdict,
            "closed_subset": frozenset({0, d})}

    if not out:
        raise NotDistanceRegular(
            "scheme is primitive: neither bipartite nor antipodal")
    return out
