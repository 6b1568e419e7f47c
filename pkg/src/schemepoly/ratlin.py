"""Small exact linear algebra kit over Fraction (and plain complex for float mode).

Matrices are lists of lists.  Everything is O(n^3) Gaussian elimination with
exact pivots; sizes in this package stay tiny (at most a few dozen rows).
"""

from fractions import Fraction

from .errors import SingularQ


def frac_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)]
            for i in range(n)]


def mat_vec(a, v):
    return [sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a))]


def identity(n, one=Fraction(1)):
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def _elim(aug, ncols):
    """Row-reduce `aug` in place over its first `ncols` columns; return pivot cols."""
    rows = len(aug)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def inverse(a):
    n = len(a)
    one = a[0][0] * 0 + 1 if not isinstance(a[0][0], Fraction) else Fraction(1)
    aug = [list(row) + list(ident_row)
           for row, ident_row in zip(a, identity(n, one))]
    pivots = _elim(aug, n)
    if len(pivots) < n:
        raise SingularQ("matrix is singular")
    return [row[n:] for row in aug]


def solve(a, b):
    """Solve a x = b (b a vector); raises SingularQ if no unique solution."""
    n = len(a)
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    pivots = _elim(aug, n)
    if len(pivots) < n:
        # could still be consistent but underdetermined; callers want uniqueness
        raise SingularQ("system has no unique solution")
    return [row[n] for row in aug[:n]]


def nullspace(a):
    """Basis of the right nullspace of `a` (list of vectors)."""
    if not a:
        return []
    m = len(a[0])
    red = [list(row) for row in a]
    pivots = _elim(red, m)
    pivot_set = set(pivots)
    free = [c for c in range(m) if c not in pivot_set]
    basis = []
    zero = a[0][0] * 0
    one = zero + 1
    for fc in free:
        v = [zero] * m
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis
