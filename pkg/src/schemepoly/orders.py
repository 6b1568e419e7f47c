"""Monomial orders on N^ell: lex, grlex, weight-matrix, block compositions,
the graded elimination order used by the imprimitivity constructions, and
coordinate-permuted wrappers.

Orders carry per-split certificates: an order can be *certified* to be of
s-elimination type (any monomial touching the first s variables beats any
monomial avoiding them) or of s-block type (comparison of the first s
coordinates dominates) when the construction guarantees it; otherwise a
bounded box search can falsify but never certify.
"""

import itertools
from dataclasses import dataclass
from functools import cmp_to_key

from .errors import BadCoords, DimensionMismatch, NotMonomialOrder

LT, EQ, GT = -1, 0, 1

CERT_ELIM = "certified-elimination"
CERT_BLOCK = "certified-block"
UNCHECKED = "unchecked"


@dataclass(frozen=True)
class Falsified:
    kind: str       # "elimination" or "block"
    witness: tuple

    def __str__(self):
        return f"falsified({self.kind}, witness={self.witness})"


def _cmp(a, b):
    return (a > b) - (a < b)


def _lex_cmp(a, b):
    for x, y in zip(a, b):
        if x != y:
            return _cmp(x, y)
    return EQ


class MonomialOrder:
    def __init__(self, ell, spec):
        self.ell = ell
        self.spec = spec

    # -- comparison ------------------------------------------------------

    def compare(self, a, b):
        if len(a) != self.ell or len(b) != self.ell:
            raise DimensionMismatch(f"expected vectors of length {self.ell}")
        return self._compare(tuple(a), tuple(b))

    def _compare(self, a, b):
        raise NotImplementedError

    def key(self):
        """Sort key (ascending in this order)."""
        return cmp_to_key(self._compare)

    def le(self, a, b):
        return self.compare(a, b) <= 0

    def lt(self, a, b):
        return self.compare(a, b) < 0

    def max(self, vectors):
        return max(vectors, key=self.key())

    def sorted(self, vectors):
        return sorted(vectors, key=self.key())

    # -- certificates ------------------------------------------------------

    def certificate(self, s):
        """Structural certificate at split s, or UNCHECKED."""
        return UNCHECKED

    def is_certified_elimination(self, s):
        return self.certificate(s) in (CERT_ELIM, CERT_BLOCK)

    def is_certified_block(self, s):
        return self.certificate(s) == CERT_BLOCK

    # -- induced orders ----------------------------------------------------

    def induced(self, coords):
        coords = tuple(coords)
        if (not coords or list(coords) != sorted(set(coords))
                or coords[0] < 0 or coords[-1] >= self.ell):
            raise BadCoords(f"bad coordinate subset {coords}")
        if coords == tuple(range(self.ell)):
            return self
        return self._induced(coords)

    def _induced(self, coords):
        return InducedOrder(self, coords)

    def to_json(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.to_json() == other.to_json()

    def __hash__(self):
        import json
        return hash(json.dumps(self.to_json(), sort_keys=True))

    def __repr__(self):
        return f"MonomialOrder({self.to_json()})"


class Lex(MonomialOrder):
    """Lex order; perm[t] is the coordinate compared at priority t."""

    def __init__(self, ell, perm=None):
        perm = tuple(perm) if perm is not None else tuple(range(ell))
        if sorted(perm) != list(range(ell)):
            raise NotMonomialOrder("perm must be a permutation of 0..ell-1")
        super().__init__(ell, ("lex", perm))
        self.perm = perm

    def _compare(self, a, b):
        for t in self.perm:
            if a[t] != b[t]:
                return _cmp(a[t], b[t])
        return EQ

    def certificate(self, s):
        # block at s iff the s top-priority coordinates are exactly 0..s-1
        if set(self.perm[:s]) == set(range(s)):
            return CERT_BLOCK
        return UNCHECKED

    def _induced(self, coords):
        rank = {c: i for i, c in enumerate(coords)}
        newperm = tuple(rank[t] for t in self.perm if t in rank)
        return Lex(len(coords), newperm)

    def to_json(self):
        return {"type": "lex", "perm": list(self.perm)}


class GrLex(MonomialOrder):
    def __init__(self, ell, perm=None):
        perm = tuple(perm) if perm is not None else tuple(range(ell))
        if sorted(perm) != list(range(ell)):
            raise NotMonomialOrder("perm must be a permutation of 0..ell-1")
        super().__init__(ell, ("grlex", perm))
        self.perm = perm

    def _compare(self, a, b):
        c = _cmp(sum(a), sum(b))
        if c:
            return c
        for t in self.perm:
            if a[t] != b[t]:
                return _cmp(a[t], b[t])
        return EQ

    def _induced(self, coords):
        rank = {c: i for i, c in enumerate(coords)}
        newperm = tuple(rank[t] for t in self.perm if t in rank)
        return GrLex(len(coords), newperm)

    def to_json(self):
        return {"type": "grlex", "perm": list(self.perm)}


class WeightMatrix(MonomialOrder):
    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        ell = len(rows[0]) if rows else 0
        if ell == 0 or any(len(r) != ell for r in rows):
            raise NotMonomialOrder("weight matrix must be nonempty rectangular")
        for c in range(ell):
            col = [r[c] for r in rows]
            first = next((v for v in col if v != 0), None)
            if first is None or first < 0:
                raise NotMonomialOrder(
                    f"column {c}: first nonzero entry must be positive")
        if _rank(rows) < ell:
            raise NotMonomialOrder("weight matrix must have full column rank")
        super().__init__(ell, ("matrix", rows))
        self.rows = rows

    def _compare(self, a, b):
        for row in self.rows:
            c = _cmp(sum(r * x for r, x in zip(row, a)),
                     sum(r * x for r, x in zip(row, b)))
            if c:
                return c
        if a != b:  # impossible at full rank
            raise NotMonomialOrder("weight matrix comparison tied on distinct inputs")
        return EQ

    def _induced(self, coords):
        sub = [tuple(r[c] for c in coords) for r in self.rows]
        keep = [r for r in sub if any(r)]
        return WeightMatrix(keep)

    def to_json(self):
        return {"type": "matrix", "rows": [list(r) for r in self.rows]}


def _rank(rows):
    from fractions import Fraction
    m = [[Fraction(x) for x in r] for r in rows]
    rank, ncols = 0, len(rows[0])
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


class Block(MonomialOrder):
    """Block composition: compare the first s coordinates under `head`,
    ties broken by `tail` on the rest.  Block type at s by construction."""

    def __init__(self, s, head, tail):
        if head.ell != s:
            raise DimensionMismatch("head order dimension must equal s")
        super().__init__(s + tail.ell, ("block", s, head, tail))
        self.s = s
        self.head = head
        self.tail = tail

    def _compare(self, a, b):
        c = self.head._compare(a[:self.s], b[:self.s])
        if c:
            return c
        return self.tail._compare(a[self.s:], b[self.s:])

    def certificate(self, s):
        if s == self.s:
            return CERT_BLOCK
        if s < self.s and self.head.certificate(s) == CERT_BLOCK:
            return CERT_BLOCK
        if s > self.s and self.tail.certificate(s - self.s) == CERT_BLOCK:
            return CERT_BLOCK
        return UNCHECKED

    def _induced(self, coords):
        if all(c < self.s for c in coords):
            return self.head.induced(coords)
        if all(c >= self.s for c in coords):
            return self.tail.induced([c - self.s for c in coords])
        hc = [c for c in coords if c < self.s]
        tc = [c - self.s for c in coords if c >= self.s]
        return Block(len(hc), self.head.induced(hc), self.tail.induced(tc))

    def to_json(self):
        return {"type": "block", "s": self.s,
                "head": self.head.to_json(), "tail": self.tail.to_json()}


class ElimGraded(MonomialOrder):
    """Graded elimination order at split s:
    compare |head|, then |tail|, then head lex, then tail lex.

    s-elimination type for every s; s-block type only when s == 1."""

    def __init__(self, ell, s):
        if not 1 <= s < ell:
            raise NotMonomialOrder("need 1 <= s < ell")
        super().__init__(ell, ("elimgraded", s))
        self.s = s

    def _compare(self, a, b):
        ah, at = a[:self.s], a[self.s:]
        bh, bt = b[:self.s], b[self.s:]
        return (_cmp(sum(ah), sum(bh)) or _cmp(sum(at), sum(bt))
                or _lex_cmp(ah, bh) or _lex_cmp(at, bt))

    def certificate(self, s):
        if s == self.s:
            return CERT_BLOCK if self.s == 1 else CERT_ELIM
        return UNCHECKED

    def _induced(self, coords):
        if all(c < self.s for c in coords) or all(c >= self.s for c in coords):
            # within one graded group the comparison is |.| then lex = grlex
            return GrLex(len(coords))
        hc = [c for c in coords if c < self.s]
        tc = [c for c in coords if c >= self.s]
        if hc == list(range(self.s)) and tc == list(range(self.s, self.ell)):
            return self
        return InducedOrder(self, coords)

    def to_json(self):
        return {"type": "elimgraded", "s": self.s}


class Permuted(MonomialOrder):
    """Compare a, b by comparing their coordinate-permuted images under
    `inner`; image coordinate t holds input coordinate perm[t]."""

    def __init__(self, perm, inner):
        perm = tuple(perm)
        if sorted(perm) != list(range(inner.ell)):
            raise NotMonomialOrder("perm must be a permutation of 0..ell-1")
        super().__init__(inner.ell, ("permuted", perm, inner))
        self.perm = perm
        self.inner = inner

    def _compare(self, a, b):
        pa = tuple(a[t] for t in self.perm)
        pb = tuple(b[t] for t in self.perm)
        return self.inner._compare(pa, pb)

    def to_json(self):
        return {"type": "permuted", "perm": list(self.perm),
                "inner": self.inner.to_json()}


class InducedOrder(MonomialOrder):
    """Generic induced order on a coordinate subset (zero-filled embedding)."""

    def __init__(self, base, coords):
        super().__init__(len(coords), ("induced", base, tuple(coords)))
        self.base = base
        self.coords = tuple(coords)

    def _embed(self, a):
        v = [0] * self.base.ell
        for c, x in zip(self.coords, a):
            v[c] = x
        return tuple(v)

    def _compare(self, a, b):
        return self.base._compare(self._embed(a), self._embed(b))

    def to_json(self):
        return {"type": "induced", "coords": list(self.coords),
                "base": self.base.to_json()}


def make_order(spec, ell=None):
    """Build an order from its JSON spec (dimension inferred where possible)."""
    t = spec["type"]
    if t == "lex":
        perm = spec.get("perm")
        if perm is None:
            if ell is None:
                raise NotMonomialOrder("lex needs perm or ell")
            perm = list(range(ell))
        return Lex(len(perm), perm)
    if t == "grlex":
        perm = spec.get("perm")
        if perm is None:
            if ell is None:
                raise NotMonomialOrder("grlex needs perm or ell")
            perm = list(range(ell))
        return GrLex(len(perm), perm)
    if t == "matrix":
        return WeightMatrix(spec["rows"])
    if t == "block":
        head = make_order(spec["head"])
        tail = make_order(spec["tail"])
        return Block(spec["s"], head, tail)
    if t == "elimgraded":
        if ell is None:
            ell = spec.get("ell")
        if ell is None:
            raise NotMonomialOrder("elimgraded needs ell")
        return ElimGraded(ell, spec["s"])
    if t == "permuted":
        return Permuted(spec["perm"], make_order(spec["inner"]))
    raise NotMonomialOrder(f"unknown order spec type {t!r}")


def compare(o, a, b):
    return o.compare(a, b)


def classify_order(o, s, box_radius=4, kind=None):
    """Certificate at split s: structural answer if available, otherwise a
    bounded search for a counterexample within the given box.

    `kind` restricts the question to "elimination" or "block"; by default the
    strongest available statement is returned (a block counterexample is only
    searched for if elimination could not be falsified first).
    """
    if not 1 <= s < o.ell:
        raise DimensionMismatch("need 1 <= s < ell")
    structural = o.certificate(s)
    if structural == CERT_BLOCK:
        return structural
    if structural == CERT_ELIM and kind != "block":
        return structural

    rng = range(box_radius + 1)
    heads = list(itertools.product(rng, repeat=s))
    tails = list(itertools.product(rng, repeat=o.ell - s))
    zero_head = (0,) * s
    zero_tail = (0,) * (o.ell - s)

    if kind in (None, "elimination") and structural != CERT_ELIM:
        # elimination: (alpha, beta1) > (o, beta2) whenever alpha != o
        for alpha in heads:
            if alpha == zero_head:
                continue
            for b1 in tails:
                for b2 in tails:
                    if o.compare(alpha + b1, zero_head + b2) <= 0:
                        return Falsified("elimination",
                                         (alpha + b1, zero_head + b2))

    if kind in (None, "block"):
        # block: (a1,o) > (a2,o) implies (a1,b1) > (a2,b2)
        for a1 in heads:
            for a2 in heads:
                if o.compare(a1 + zero_tail, a2 + zero_tail) <= 0:
                    continue
                for b1 in tails:
                    for b2 in tails:
                        if o.compare(a1 + b1, a2 + b2) <= 0:
                            return Falsified("block", (a1 + b1, a2 + b2))
    return UNCHECKED


def induced_order(o, coords):
    return o.induced(coords)


def lex(ell, perm=None):
    return Lex(ell, perm)


def grlex(ell, perm=None):
    return GrLex(ell, perm)
