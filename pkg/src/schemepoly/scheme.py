"""Commutative association schemes with exact intersection/eigen/Krein data.

A scheme is stored as an n x n matrix of relation labels.  Labels are opaque
hashable tokens: plain ints or tuples of ints (the tuple kind doubles as the
multi-index labels used by the structure-checking layer).  All axioms are
verified by explicit matrix-product expansion at construction time.

Eigen data is computed from the regular representation (the (d+1) x (d+1)
intersection matrices), not the n x n adjacency matrices.  In exact mode the
eigenvalues of an integer combination of intersection matrices are algebraic
integers, so every rational eigenvalue is an integer bounded by
sum |c_i| * k_i; we scan that interval with exact nullspace computations.
"""

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (AxiomViolation, InconsistentCounts, IrrationalEigenvalues,
                     NonSquare, NotBijective, SingularQ)
from . import ratlin

FLOAT_TOL = 1e-9


def _label_key(tok):
    # ints sort before tuples; deterministic total order on tokens
    if isinstance(tok, tuple):
        return (1, tok)
    return (0, (tok,))


def normalize_label(tok):
    if isinstance(tok, list):
        return tuple(int(t) for t in tok)
    if isinstance(tok, tuple):
        return tuple(int(t) for t in tok)
    if isinstance(tok, (int, np.integer)):
        return int(tok)
    raise AxiomViolation("A1", tok, f"unsupported label token {tok!r}")


@dataclass(frozen=True)
class IntersectionTensor:
    labels: tuple
    p: tuple          # (d+1)^3 nested tuples, indexed by label positions [k][i][j]
    valencies: dict   # label -> int

    def index(self, label):
        return self.labels.index(label)

    def value(self, k, i, j):
        return self.p[self.index(k)][self.index(i)][self.index(j)]


@dataclass(frozen=True)
class EigenData:
    labels: tuple         # column index set I, in scheme order
    n: int
    P: tuple              # rows indexed by J = 0..d (0 = j0), columns by I
    Q: tuple              # rows indexed by I, columns by J
    multiplicities: tuple
    krein: tuple          # [k][i][j] over J positions
    exact: bool
    jtranspose: dict      # J index -> J index

    @property
    def d(self):
        return len(self.P) - 1

    def krein_tensor(self):
        """Krein numbers packaged like an intersection tensor over J = 0..d."""
        jlabels = tuple(range(len(self.P)))
        mults = {j: self.multiplicities[j] for j in jlabels}
        return IntersectionTensor(jlabels, self.krein, mults)


class Scheme:
    """Immutable commutative association scheme."""

    def __init__(self, n, labels, rel, i0, transpose_map, mode="exact"):
        self.n = n
        self.labels = tuple(labels)
        self.rel = rel                      # numpy array of label positions
        self.rel.setflags(write=False)
        self.i0 = i0
        self.transpose_map = dict(transpose_map)
        self.mode = mode
        self._tensor = None
        self._eigen = None

    @property
    def d(self):
        return len(self.labels) - 1

    def label_pos(self, label):
        return self.labels.index(label)

    def relation(self, x, y):
        return self.labels[self.rel[x, y]]

    def adjacency(self, label):
        return (self.rel == self.label_pos(label)).astype(np.int64)

    def tensor(self):
        if self._tensor is None:
            self._tensor = _intersection_tensor(self)
        return self._tensor

    def valency(self, label):
        return self.tensor().valencies[label]

    def eigen(self, seed=0):
        if self._eigen is None:
            self._eigen = eigen_decomposition(self, seed=seed)
        return self._eigen

    def __eq__(self, other):
        return (isinstance(other, Scheme) and self.n == other.n
                and self.labels == other.labels
                and np.array_equal(self.rel, other.rel))

    def __hash__(self):
        return hash((self.n, self.labels, self.rel.tobytes()))

    def __repr__(self):
        return f"Scheme(n={self.n}, d={self.d})"


def validate_scheme(relmat, mode="exact", labels=None):
    """Check axioms A1-A5 on a label matrix and return the Scheme.

    `labels` fixes the index-set order (defaults to sorted token order).
    """
    rows = list(relmat)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise NonSquare("relation matrix must be square and nonempty")
    tokens = [[normalize_label(t) for t in r] for r in rows]
    seen = {t for r in tokens for t in r}
    if labels is None:
        index_set = tuple(sorted(seen, key=_label_key))
    else:
        index_set = tuple(normalize_label(t) for t in labels)
        if set(index_set) != seen or len(set(index_set)) != len(index_set):
            raise AxiomViolation("A1", None, "labels list does not match matrix labels")
    pos = {t: i for i, t in enumerate(index_set)}
    rel = np.array([[pos[t] for t in r] for r in tokens], dtype=np.int64)

    # A2: a single identity label exactly on the diagonal
    diag = {tokens[x][x] for x in range(n)}
    if len(diag) != 1:
        raise AxiomViolation("A2", sorted(diag, key=_label_key),
                             "diagonal is not a single label")
    i0 = diag.pop()
    offdiag = rel.copy()
    np.fill_diagonal(offdiag, -1)
    bad = np.argwhere(offdiag == pos[i0])
    if len(bad):
        x, y = map(int, bad[0])
        raise AxiomViolation("A2", (x, y, i0), "identity label off the diagonal")

    # A3: transposing the matrix permutes labels
    relT = rel.T
    transpose_map = {}
    for i, tok in enumerate(index_set):
        vals = set(np.unique(relT[rel == i]).tolist())
        if len(vals) != 1:
            raise AxiomViolation("A3", tok, "transpose is not label-constant")
        transpose_map[tok] = index_set[vals.pop()]
    if any(transpose_map[transpose_map[t]] != t for t in index_set):
        raise AxiomViolation("A3", None, "transpose map is not an involution")

    # A4 + A5: constant structure coefficients, symmetric in (i, j)
    dd = len(index_set)
    adj = [(rel == i).astype(np.int64) for i in range(dd)]
    masks = [rel == k for k in range(dd)]
    p = [[[0] * dd for _ in range(dd)] for _ in range(dd)]
    for i in range(dd):
        for j in range(i, dd):
            m = adj[i] @ adj[j]
            for k in range(dd):
                vals = m[masks[k]]
                v0 = int(vals[0]) if vals.size else 0
                if vals.size and not np.all(vals == v0):
                    pos_bad = np.argwhere(masks[k] & (m != v0))[0]
                    raise AxiomViolation(
                        "A4", (int(pos_bad[0]), int(pos_bad[1]), index_set[k]),
                        "product count is not constant on a relation class")
                p[k][i][j] = v0
            if i != j:
                m2 = adj[j] @ adj[i]
                if not np.array_equal(m, m2):
                    x, y = map(int, np.argwhere(m != m2)[0])
                    raise AxiomViolation("A5", (x, y, index_set[rel[x, y]]),
                                         "adjacency matrices do not commute")
                for k in range(dd):
                    p[k][j][i] = p[k][i][j]

    s = Scheme(n, index_set, rel, i0, transpose_map, mode=mode)
    s._tensor = IntersectionTensor(
        index_set,
        tuple(tuple(tuple(r) for r in pk) for pk in p),
        {tok: p[pos[i0]][i][pos[transpose_map[tok]]]
         for i, tok in enumerate(index_set)},
    )
    for tok, k in s._tensor.valencies.items():
        if k < 1:
            raise AxiomViolation("A1", tok, "relation label never occurs")
    return s


def _intersection_tensor(s):
    """Witness-pair recomputation (kept separate from the A4 validation path)."""
    dd = s.d + 1
    adj = [(s.rel == i).astype(np.int64) for i in range(dd)]
    witness = {}
    for k in range(dd):
        xs, ys = np.nonzero(s.rel == k)
        witness[k] = (int(xs[0]), int(ys[0]))
    p = [[[0] * dd for _ in range(dd)] for _ in range(dd)]
    for i in range(dd):
        for j in range(dd):
            m = adj[i] @ adj[j]
            for k in range(dd):
                x, y = witness[k]
                p[k][i][j] = int(m[x, y])
    pos = {t: i for i, t in enumerate(s.labels)}
    val = {t: p[pos[s.i0]][pos[t]][pos[s.transpose_map[t]]] for t in s.labels}
    if any(v < 1 for v in val.values()):
        raise InconsistentCounts("zero valency")
    return IntersectionTensor(s.labels,
                              tuple(tuple(tuple(r) for r in pk) for pk in p),
                              val)


def intersection_numbers(s):
    return s.tensor()


def intersection_matrices(s):
    """B_i with (B_i)[k][j] = p^k_{ij}, as Fraction matrices."""
    t = s.tensor()
    dd = s.d + 1
    return [[[Fraction(t.p[k][i][j]) for j in range(dd)] for k in range(dd)]
            for i in range(dd)]


def _exact_eigen(s, seed):
    dd = s.d + 1
    bs = intersection_matrices(s)
    valencies = [s.tensor().valencies[t] for t in s.labels]
    rng = random.Random(seed)
    for _ in range(5):
        coeffs = [rng.randint(1, 20) for _ in range(dd)]
        b = [[sum(coeffs[i] * bs[i][k][j] for i in range(dd)) for j in range(dd)]
             for k in range(dd)]
        bound = sum(c * k for c, k in zip(coeffs, valencies))
        vecs = []
        ok = True
        for t in range(-bound, bound + 1):
            shifted = [[b[r][c] - (t if r == c else 0) for c in range(dd)]
                       for r in range(dd)]
            ns = ratlin.nullspace(shifted)
            if len(ns) > 1:
                ok = False
                break
            vecs.extend(ns)
        if ok and len(vecs) == dd:
            rows = []
            for v in vecs:
                piv = next(r for r in range(dd) if v[r] != 0)
                row = []
                for i in range(dd):
                    bv = sum(bs[i][piv][c] * v[c] for c in range(dd))
                    row.append(bv / v[piv])
                rows.append(tuple(row))
            return rows
    raise IrrationalEigenvalues(
        "no integer combination of intersection matrices splits rationally")


def _float_eigen(s, seed):
    dd = s.d + 1
    t = s.tensor()
    rng = random.Random(seed)
    for _ in range(5):
        coeffs = [rng.randint(1, 20) for _ in range(dd)]
        b = np.zeros((dd, dd))
        for i in range(dd):
            b += coeffs[i] * np.array(t.p)[:, i, :]
        w, v = np.linalg.eig(b.astype(complex))
        if dd > 1:
            gap = min(abs(w[a] - w[c])
                      for a in range(dd) for c in range(a + 1, dd))
            if gap < 1e-8:
                continue
        rows = []
        bs = [np.array(t.p)[:, i, :].astype(complex) for i in range(dd)]
        for c in range(dd):
            vec = v[:, c]
            piv = int(np.argmax(np.abs(vec)))
            rows.append(tuple((bi @ vec)[piv] / vec[piv] for bi in bs))
        return rows
    raise IrrationalEigenvalues("degenerate float eigendecomposition")


def _sort_key_exact(row):
    return tuple(row)


def _sort_key_float(row):
    return tuple((round(z.real, 9), round(z.imag, 9)) for z in row)


def eigen_decomposition(s, seed=0):
    """First/second eigenmatrices, multiplicities and Krein numbers."""
    dd = s.d + 1
    valencies = [s.tensor().valencies[t] for t in s.labels]
    exact = s.mode == "exact"
    if exact:
        rows = _exact_eigen(s, seed)
        vrow = tuple(Fraction(k) for k in valencies)
        rest = [r for r in rows if r != vrow]
        if len(rest) != dd - 1:
            raise IrrationalEigenvalues("valency row not found in spectrum")
        rows = [vrow] + sorted(rest, key=_sort_key_exact)
        pmat = [list(r) for r in rows]
        qmat = ratlin.inverse(pmat)
        qmat = [[v * s.n for v in row] for row in qmat]
    else:
        rows = _float_eigen(s, seed)
        vrow = min(rows, key=lambda r: max(abs(z - k) for z, k in zip(r, valencies)))
        rest = [r for r in rows if r is not vrow]
        rows = [tuple(complex(k) for k in valencies)] + sorted(rest, key=_sort_key_float)
        pmat = [list(r) for r in rows]
        qmat = (s.n * np.linalg.inv(np.array(pmat))).tolist()

    mults = tuple(qmat[s.label_pos(s.i0)][j] for j in range(dd))
    if exact and sum(mults) != s.n:
        raise SingularQ("multiplicities do not sum to |X|")

    # Krein numbers: q^k_{ij} = (1/n) sum_u P[k][u] Q[u][i] Q[u][j]
    krein = tuple(
        tuple(
            tuple(
                sum(pmat[k][u] * qmat[u][i] * qmat[u][j] for u in range(dd))
                / (Fraction(s.n) if exact else s.n)
                for j in range(dd))
            for i in range(dd))
        for k in range(dd))

    # transpose on J: the column of Q matching conj-composed-with-i-transpose
    tpos = {s.label_pos(t): s.label_pos(s.transpose_map[t]) for t in s.labels}
    jt = {}
    for j in range(dd):
        target = [qmat[tpos[i]][j].conjugate() if not exact else qmat[tpos[i]][j]
                  for i in range(dd)]
        for j2 in range(dd):
            col = [qmat[i][j2] for i in range(dd)]
            if exact:
                match = col == target
            else:
                match = max(abs(a - b) for a, b in zip(col, target)) < 1e-6
            if match:
                jt[j] = j2
                break
        else:
            raise SingularQ("no transpose-partner idempotent found")

    return EigenData(
        labels=s.labels, n=s.n,
        P=tuple(tuple(r) for r in pmat),
        Q=tuple(tuple(r) for r in qmat),
        multiplicities=mults, krein=krein, exact=exact, jtranspose=jt)


def krein_numbers(e):
    """Krein tensor from EigenData, re-derived by solving the Hadamard system."""
    dd = len(e.P)
    out = []
    for i in range(dd):
        rows_i = []
        for j in range(dd):
            rhs = [e.Q[u][i] * e.Q[u][j] for u in range(dd)]
            if e.exact:
                sol = ratlin.solve([list(r) for r in e.Q], rhs)
            else:
                sol = np.linalg.solve(np.array(e.Q), np.array(rhs)).tolist()
            rows_i.append(tuple(sol))
        out.append(tuple(rows_i))
    # out[i][j][k]; repackage as [k][i][j]
    return tuple(tuple(tuple(out[i][j][k] for j in range(dd)) for i in range(dd))
                 for k in range(dd))


def relabel(s, phi):
    """Transport the scheme along a label bijection phi: I -> I'."""
    mapping = {normalize_label(k): normalize_label(v) for k, v in phi.items()}
    if set(mapping) != set(s.labels) or len(set(mapping.values())) != len(s.labels):
        raise NotBijective("relabeling must be a bijection on the index set")
    new_labels = [mapping[t] for t in s.labels]
    mat = [[mapping[s.labels[s.rel[x, y]]] for y in range(s.n)] for x in range(s.n)]
    return validate_scheme(mat, mode=s.mode, labels=new_labels)


def scheme_to_json(s):
    def enc(tok):
        return list(tok) if isinstance(tok, tuple) else tok
    return {
        "n": s.n,
        "labels": [enc(t) for t in s.labels],
        "relations": [[enc(s.labels[s.rel[x, y]]) for y in range(s.n)]
                      for x in range(s.n)],
    }


def scheme_from_json(obj, mode="exact"):
    labels = [normalize_label(t) for t in obj["labels"]] if "labels" in obj else None
    sch = validate_scheme(obj["relations"], mode=mode, labels=labels)
    if "n" in obj and obj["n"] != sch.n:
        raise NonSquare("declared n does not match matrix size")
    return sch


def load_scheme(path, mode="exact"):
    with open(path) as fh:
        return scheme_from_json(json.load(fh), mode=mode)


def dump_scheme(s, path):
    with open(path, "w") as fh:
        json.dump(scheme_to_json(s), fh, indent=1, sort_keys=True)


# convenience re-export for modules that only need the dataclass shape
__all__ = [
    "Scheme", "IntersectionTensor", "EigenData", "validate_scheme",
    "intersection_numbers", "intersection_matrices", "eigen_decomposition",
    "krein_numbers", "relabel", "scheme_to_json", "scheme_from_json",
    "load_scheme", "dump_scheme", "FLOAT_TOL", "normalize_label",
]
