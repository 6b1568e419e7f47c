"""Cross-module verifiers tying structures, imprimitivity, and ideals
together.

- census_equivalence: imprimitivity (closed-subset count > 2) must coincide
  with the existence of a canonical graded-elimination structure at ell = d;
- quotient/block transfer reports: polynomial families carried down to the
  quotient/block schemes, re-checked independently;
- verify_block_quotient_ideals: the boundary ideal of the block scheme equals
  the tail elimination ideal, and the quotient's equals the rescaled
  adjoin-valencies elimination ideal, each computed by two independent routes.
"""

from fractions import Fraction

from .errors import IrrationalEigenvalues, TheoremViolation
from .imprimitivity import (_closed_from_members, _find_split,
                            all_closed_subsets, block_structure,
                            quotient_scheme, quotient_structure)
from .mpoly import adjoin_and_eliminate, buchberger, elimination_ideal, \
    rescale_ideal
from .structure import (boundary_ideal_generators, canonical_search_battery,
                        eigen_consistency, eps)


def census_equivalence(s):
    """Closed-subset imprimitivity vs the canonical elimination-structure
    search, on both the intersection and (exact mode) Krein sides."""
    subs = all_closed_subsets(s)
    imprimitive = len(subs) > 2
    p_found = bool(canonical_search_battery(s, side="p"))
    q_found = None
    if s.mode == "exact":
        try:
            q_found = bool(canonical_search_battery(s, side="q"))
        except IrrationalEigenvalues:
            q_found = None
    consistent = (imprimitive == p_found
                  and (q_found is None or q_found == imprimitive))
    return {"closed_subsets": len(subs), "imprimitive": imprimitive,
            "p_search": p_found, "q_search": q_found,
            "consistent": consistent}


def quotient_transfer_report(s, domain, order, c):
    qdomain, order_s, vqt, verdict, qdata = quotient_structure(
        s, domain, order, c)
    return {"holds": bool(verdict.holds),
            "domain": qdomain.to_json(),
            "order": order_s.to_json(),
            "v": {",".join(map(str, a)): p.render()
                  for a, p in sorted(vqt.items())},
            "quotient_labels": [repr(l) for l in qdata.scheme.labels]}


def block_transfer_report(s, domain, order, c, x0=0):
    bdomain, order_bl, vbl, verdict, bdata = block_structure(
        s, domain, order, c, x0)
    return {"holds": bool(verdict.holds),
            "domain": bdomain.to_json(),
            "order": order_bl.to_json(),
            "v": {",".join(map(str, b)): p.render()
                  for b, p in sorted(vbl.items())},
            "block_labels": [repr(l) for l in bdata.scheme.labels]}


def verify_block_quotient_ideals(s, domain, order, c, x0=0):
    """Block ideal = tail elimination ideal; quotient ideal = rescaled
    adjoin-valencies ideal.  Each side also recomputed directly as the
    boundary ideal of the independently constructed derived scheme, and all
    three families checked against their eigenvalue point sets."""
    c = c if hasattr(c, "members") else _closed_from_members(s, frozenset(c))
    ell = domain.ell
    split = _find_split(domain, order, c.members, require="block")
    head = list(range(split))
    tail = list(range(split, ell))

    fam = boundary_ideal_generators(s, domain, order)
    gb = buchberger(list(fam.generators), order)
    eigen_consistency(s, domain, order, family=fam)

    # block side
    elim = elimination_ideal(gb, split)
    tail_order = order.induced(tail)
    route_a_bl = buchberger(list(elim.generators), tail_order)
    bdomain, order_bl, vbl, bverdict, bdata = block_structure(
        s, domain, order, c, x0)
    bfam = boundary_ideal_generators(bdata.scheme, bdomain, order_bl)
    route_b_bl = buchberger(list(bfam.generators), order_bl)
    if route_a_bl.generators != route_b_bl.generators:
        raise TheoremViolation(
            "block ideal mismatch: "
            f"{[g.render() for g in route_a_bl.generators]} vs "
            f"{[g.render() for g in route_b_bl.generators]}")
    eigen_consistency(bdata.scheme, bdomain, order_bl, family=bfam)

    # quotient side
    tv = s.tensor().valencies
    subs = {t: Fraction(tv[domain.label(eps(t, ell))]) for t in tail}
    head_order = order.induced(head)
    jqt = adjoin_and_eliminate(gb, subs, out_order=head_order)

    qdata = quotient_scheme(s, c)
    qtv = qdata.scheme.tensor().valencies
    factors = [Fraction(tv[domain.label(eps(i, ell))],
                        qtv[qdata.label_map[domain.label(eps(i, ell))]])
               for i in head]
    iqt = rescale_ideal(jqt, factors)

    qdomain, order_s, vqt, qverdict, qdata2 = quotient_structure(
        s, domain, order, c)
    qfam = boundary_ideal_generators(qdata2.scheme, qdomain, order_s)
    route_b_qt = buchberger(list(qfam.generators), order_s)
    if iqt.generators != route_b_qt.generators:
        raise TheoremViolation(
            "quotient ideal mismatch: "
            f"{[g.render() for g in iqt.generators]} vs "
            f"{[g.render() for g in route_b_qt.generators]}")
    eigen_consistency(qdata2.scheme, qdomain, order_s, family=qfam)

    return {
        "ideal": [g.render() for g in gb.generators],
        "block_ideal": [g.render() for g in route_a_bl.generators],
        "quotient_adjoined": [g.render() for g in jqt.generators],
        "quotient_ideal": [g.render() for g in iqt.generators],
        "block_holds": bool(bverdict.holds),
        "quotient_holds": bool(qverdict.holds),
        "split": split,
    }
