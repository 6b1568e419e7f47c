"""Sparse multivariate polynomials over exact rationals, division/normal
form, Buchberger's algorithm, and elimination-ideal plumbing.

All coefficients are Fraction; monomials are exponent tuples in N^ell.
Gröbner bases are reduced, monic, and sorted by leading monomial ascending so
basis equality is plain sequence comparison.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (DimensionMismatch, OrderNotEliminationType, ZeroFactor)
from .orders import MonomialOrder


class MPoly:
    __slots__ = ("terms", "ell")

    def __init__(self, terms, ell):
        self.ell = ell
        self.terms = {tuple(m): Fraction(c) for m, c in dict(terms).items()
                      if Fraction(c) != 0}

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(ell):
        return MPoly({}, ell)

    @staticmethod
    def const(c, ell):
        return MPoly({(0,) * ell: Fraction(c)}, ell)

    @staticmethod
    def var(i, ell):
        m = [0] * ell
        m[i] = 1
        return MPoly({tuple(m): Fraction(1)}, ell)

    @staticmethod
    def monomial(expo, c=1):
        return MPoly({tuple(expo): Fraction(c)}, len(expo))

    # -- basics -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, MPoly) and self.ell == other.ell
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ell, frozenset(self.terms.items())))

    def _check(self, other):
        if self.ell != other.ell:
            raise DimensionMismatch("mixed polynomial dimensions")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other, self.ell)
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, Fraction(0)) + c
        return MPoly(t, self.ell)

    def __neg__(self):
        return MPoly({m: -c for m, c in self.terms.items()}, self.ell)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other, self.ell)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly({m: c * other for m, c in self.terms.items()}, self.ell)
        self._check(other)
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, Fraction(0)) + c1 * c2
        return MPoly(t, self.ell)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, k):
        out = MPoly.const(1, self.ell)
        for _ in range(k):
            out = out * self
        return out

    # -- order-dependent --------------------------------------------------

    def multideg(self, order):
        if self.is_zero():
            raise ZeroFactor("multidegree of zero polynomial")
        return order.max(self.terms.keys())

    def lc(self, order):
        return self.terms[self.multideg(order)]

    def lt(self, order):
        m = self.multideg(order)
        return m, self.terms[m]

    def monic(self, order):
        c = self.lc(order)
        return MPoly({m: v / c for m, v in self.terms.items()}, self.ell)

    # -- evaluation / substitution ------------------------------------------

    def eval(self, point):
        total = 0
        for m, c in self.terms.items():
            v = c if isinstance(point[0], (int, Fraction)) else complex(c)
            for x, e in zip(point, m):
                for _ in range(e):
                    v = v * x
            total = total + v
        return total

    def subs(self, mapping):
        """Substitute variables: mapping var index -> MPoly/const (same ell
        as the *result*, given by any MPoly present, else self.ell)."""
        ell_out = None
        for v in mapping.values():
            if isinstance(v, MPoly):
                ell_out = v.ell
        if ell_out is None:
            ell_out = self.ell
        out = MPoly.zero(ell_out)
        for m, c in self.terms.items():
            term = MPoly.const(c, ell_out)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                if i in mapping:
                    rep = mapping[i]
                    if not isinstance(rep, MPoly):
                        rep = MPoly.const(rep, ell_out)
                    term = term * rep ** e
                else:
                    term = term * MPoly.var(i, ell_out) ** e
            out = out + term
        return out

    def permute_vars(self, perm):
        """Return f with exponent vectors permuted: new monomial m' with
        m'[perm[i]] = m[i]."""
        t = {}
        for m, c in self.terms.items():
            m2 = [0] * self.ell
            for i, e in enumerate(m):
                m2[perm[i]] = e
            t[tuple(m2)] = c
        return MPoly(t, self.ell)

    def embed(self, ell_out, coords):
        """Reinterpret in N^ell_out, variable i becoming coords[i]."""
        t = {}
        for m, c in self.terms.items():
            m2 = [0] * ell_out
            for i, e in enumerate(m):
                m2[coords[i]] = e
            t[tuple(m2)] = c
        return MPoly(t, ell_out)

    def restrict(self, coords):
        """Inverse of embed: keep only the given coordinates (all terms must
        be supported there)."""
        cs = set(coords)
        t = {}
        for m, c in self.terms.items():
            if any(e and i not in cs for i, e in enumerate(m)):
                raise DimensionMismatch("term not supported on the coordinates")
            t[tuple(m[i] for i in coords)] = c
        return MPoly(t, len(coords))

    def support_within(self, coords):
        cs = set(coords)
        return all(not e or i in cs for m in self.terms for i, e in enumerate(m))

    # -- rendering ----------------------------------------------------------

    def render(self, names=None):
        if self.is_zero():
            return "0"
        names = names or [f"x{i+1}" for i in range(self.ell)]
        mono_key = lambda m: (-sum(m), tuple(-e for e in m))
        parts = []
        for m in sorted(self.terms, key=mono_key):
            c = self.terms[m]
            factors = [f"{names[i]}^{e}" if e > 1 else names[i]
                       for i, e in enumerate(m) if e]
            body = "*".join(factors)
            mag = abs(c)
            coef = "" if (mag == 1 and body) else str(mag)
            txt = coef + ("*" if coef and body else "") + body
            sign = "-" if c < 0 else "+"
            parts.append((sign, txt or "0"))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, txt in parts[1:]:
            out += f" {sign} {txt}"
        return out

    def to_json(self):
        return {",".join(map(str, m)): str(c) for m, c in sorted(self.terms.items())}

    @staticmethod
    def from_json(obj, ell):
        terms = {}
        for k, v in obj.items():
            m = tuple(int(t) for t in k.split(",")) if k else ()
            terms[m] = Fraction(v)
        return MPoly(terms, ell)

    def __repr__(self):
        return f"MPoly({self.render()})"


def _divides(m, n):
    return all(a <= b for a, b in zip(m, n))


def _mono_div(n, m):
    return tuple(b - a for a, b in zip(m, n))


def _mono_lcm(m, n):
    return tuple(max(a, b) for a, b in zip(m, n))


def normal_form(f, gens, order):
    """Multivariate division remainder of f by the sequence `gens`
    (divisor chosen by first match, deterministic)."""
    gens = [g for g in gens if not g.is_zero()]
    for g in gens:
        if g.ell != f.ell:
            raise DimensionMismatch("mixed polynomial dimensions")
    lts = [(g.multideg(order), g) for g in gens]
    rem = {}
    work = MPoly(f.terms, f.ell)
    while not work.is_zero():
        m, c = work.lt(order)
        for lm, g in lts:
            if _divides(lm, m):
                q = MPoly.monomial(_mono_div(m, lm), c / g.terms[lm])
                work = work - q * g
                break
        else:
            rem[m] = c
            work = MPoly({k: v for k, v in work.terms.items() if k != m}, f.ell)
    return MPoly(rem, f.ell)


def s_poly(f, g, order):
    mf, cf = f.lt(order)
    mg, cg = g.lt(order)
    l = _mono_lcm(mf, mg)
    return (MPoly.monomial(_mono_div(l, mf), Fraction(1) / cf) * f
            - MPoly.monomial(_mono_div(l, mg), Fraction(1) / cg) * g)


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    order: MonomialOrder
    reduced: bool = True

    @property
    def ell(self):
        return self.order.ell

    def normal_form(self, f):
        return normal_form(f, self.generators, self.order)

    def contains(self, f):
        return self.normal_form(f).is_zero()

    def leading_monomials(self):
        return [g.multideg(self.order) for g in self.generators]

    def standard_monomials(self, bound=None):
        """The monomials outside the leading-term staircase; only finite for
        zero-dimensional ideals (bounded by `bound` coordinatewise if given)."""
        lms = self.leading_monomials()
        if bound is None:
            bound = [0] * self.ell
            for lm in lms:
                bound = [max(a, b) for a, b in zip(bound, lm)]
        out = []
        for m in itertools.product(*[range(b + 1) for b in bound]):
            if not any(_divides(lm, m) for lm in lms):
                out.append(m)
        return out

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis)
                and self.generators == other.generators)

    def to_json(self):
        return {"order": self.order.to_json(),
                "generators": [g.to_json() for g in self.generators],
                "rendered": [g.render() for g in self.generators]}


def buchberger(gens, order):
    """Reduced Gröbner basis of <gens>.  Normal selection strategy (smallest
    lcm first) with the coprime-leading-term criterion."""
    basis = [g for g in gens if not g.is_zero()]
    if not basis:
        return GroebnerBasis((), order)
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    mono_key = order.key()
    while pairs:
        i, j = min(pairs, key=lambda ij: (
            mono_key(_mono_lcm(basis[ij[0]].multideg(order),
                               basis[ij[1]].multideg(order))), ij))
        pairs.discard((i, j))
        mi, mj = basis[i].multideg(order), basis[j].multideg(order)
        if _mono_lcm(mi, mj) == tuple(a + b for a, b in zip(mi, mj)):
            continue  # coprime leading monomials
        r = normal_form(s_poly(basis[i], basis[j], order), basis, order)
        if not r.is_zero():
            basis.append(r)
            k = len(basis) - 1
            pairs.update((i2, k) for i2 in range(k))

    # minimalize: drop generators whose LM is divisible by another's
    basis = [g.monic(order) for g in basis]
    lms = [g.multideg(order) for g in basis]
    keep = []
    for i, g in enumerate(basis):
        if any(j != i and _divides(lms[j], lms[i]) and
               (lms[j] != lms[i] or j < i) for j in range(len(basis))):
            continue
        keep.append(g)
    # reduce: replace each by its normal form against the others
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = normal_form(g, others, order) if others else g
        if not r.is_zero():
            reduced.append(r.monic(order))
    reduced.sort(key=lambda g: order.key()(g.multideg(order)))
    return GroebnerBasis(tuple(reduced), order)


def elimination_ideal(gb, s):
    """I ∩ k[x_{s+1}..x_ell] from a Gröbner basis under an order certified of
    s-elimination type; returns a basis in the last ell-s variables."""
    if not gb.order.is_certified_elimination(s):
        raise OrderNotEliminationType(
            f"order is not certified {s}-elimination type")
    tail = list(range(s, gb.ell))
    kept = [g.restrict(tail) for g in gb.generators if g.support_within(tail)]
    induced = gb.order.induced(tail)
    return GroebnerBasis(tuple(kept), induced)


def eliminate_vars(gens, ell, keep_coords, out_order):
    """Gröbner basis of <gens> ∩ k[x_c : c in keep_coords], computed via a
    block order making the dropped variables large; result in the kept
    variables under out_order."""
    from .orders import Block, GrLex
    keep = list(keep_coords)
    drop = [c for c in range(ell) if c not in set(keep)]
    perm = [0] * ell  # old index -> new index, dropped vars first
    for newpos, c in enumerate(drop + keep):
        perm[c] = newpos
    moved = [g.permute_vars(perm) for g in gens]
    order = Block(len(drop), GrLex(len(drop)), GrLex(len(keep))) \
        if drop and keep else GrLex(ell)
    gb = buchberger(moved, order)
    tail = list(range(len(drop), ell))
    kept = [g.restrict(tail) for g in gb.generators if g.support_within(tail)]
    return buchberger(kept, out_order)


def adjoin_and_eliminate(gb, substitutions, out_order=None):
    """Gröbner basis of (I + <x_t - c_t : t in substitutions>) ∩ k[head vars].

    `substitutions` maps trailing variable indices to exact rational constants;
    the head variables are those not substituted.  Computed two ways — tail
    elimination under a block order, and direct substitution followed by
    Buchberger — asserting both agree.
    """
    from .orders import GrLex
    from .errors import TheoremViolation
    ell = gb.ell
    subs = {int(t): Fraction(c) for t, c in substitutions.items()}
    head = [c for c in range(ell) if c not in subs]
    if out_order is None:
        out_order = GrLex(len(head))

    lin = [MPoly.var(t, ell) - MPoly.const(c, ell) for t, c in subs.items()]
    route_a = eliminate_vars(list(gb.generators) + lin, ell, head, out_order)

    substituted = [g.subs({t: MPoly.const(c, ell) for t, c in subs.items()})
                   for g in gb.generators]
    substituted = [g.restrict(head) for g in
                   (h for h in substituted if not h.is_zero())]
    route_b = buchberger(substituted, out_order)

    if route_a.generators != route_b.generators:
        raise TheoremViolation(
            "elimination route and substitution route disagree: "
            f"{[g.render() for g in route_a.generators]} vs "
            f"{[g.render() for g in route_b.generators]}")
    return route_a


def rescale_ideal(gb, factors):
    """Apply the variable rescaling x_i -> factors[i] * x_i to every
    generator and re-monicize.  Factors must be nonzero rationals."""
    fs = [Fraction(f) for f in factors]
    if any(f == 0 for f in fs):
        raise ZeroFactor("rescaling factors must be nonzero")
    out = []
    for g in gb.generators:
        t = {}
        for m, c in g.terms.items():
            scale = Fraction(1)
            for f, e in zip(fs, m):
                scale *= f ** e
            t[m] = c * scale
        out.append(MPoly(t, gb.ell).monic(gb.order))
    out.sort(key=lambda g: gb.order.key()(g.multideg(gb.order)))
    return GroebnerBasis(tuple(out), gb.order)
