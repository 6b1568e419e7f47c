#!/usr/bin/env python3
"""Print the worked examples end to end: complete multipartite, nonbinary
Johnson, hypercube/cycle bipartite+antipodal structures, wreath composition
series, and the self-duality checks."""

from schemepoly import (Lex, boundary_ideal_generators, closure,
                        composition_ideal_chain, composition_series,
                        crested_product, find_duality_pairing,
                        formal_duality_check, verify_block_quotient_ideals)
from schemepoly import catalog
from schemepoly.catalog import drg_bivariate_structures


def banner(text):
    print(f"\n== {text} ==")


def multipartite():
    for m, r in [(3, 2), (4, 3), (2, 5)]:
        entry = catalog.complete_multipartite(m, r)
        s = entry.scheme
        banner(f"complete multipartite m={m} r={r} (n={s.n})")
        print("P =", [[str(v) for v in row] for row in s.eigen().P])
        fam = boundary_ideal_generators(s, entry.domain, entry.order)
        for b, w in sorted(fam.w.items()):
            print(f"w_{b} =", w.render())
        rep = verify_block_quotient_ideals(
            s, entry.domain, entry.order, closure(s, {(0, 1)}))
        print("block ideal:", rep["block_ideal"])
        print("quotient ideal:", rep["quotient_ideal"],
              "(adjoined:", rep["quotient_adjoined"], ")")


def nonbinary_johnson():
    for n in (3, 4):
        entry = catalog.nonbinary_johnson(3, 2, n)
        s = entry.scheme
        banner(f"nonbinary Johnson r=3 k=2 n={n} (points={s.n})")
        fam = boundary_ideal_generators(s, entry.domain, entry.order)
        for b, w in sorted(fam.w.items()):
            print(f"w_{b} =", w.render())
        rep = verify_block_quotient_ideals(
            s, entry.domain, entry.order, closure(s, {(0, 1)}))
        print("block ideal:", rep["block_ideal"])
        print("quotient ideal:", rep["quotient_ideal"])


def distance_regular():
    for name in (("hypercube", 3), ("hypercube", 4), ("cycle", 6)):
        s = catalog.graph_distance(*name).scheme
        banner(f"distance scheme of {name[0]}{name[1:]} (n={s.n}, d={s.d})")
        for side, entry in drg_bivariate_structures(s).items():
            print(f"{side}: verdict={entry['verdict'].holds}, "
                  f"closed={sorted(entry['closed_subset'])}")
            for a, v in sorted(entry["v"].items()):
                print(f"  v_{a} =", v.render())


def wreath_series():
    k2 = catalog.complete(2).scheme
    w = crested_product(k2, {0}, k2, {0, 1})
    w3 = crested_product(k2, {0}, w.scheme, set(w.scheme.labels))
    s = w3.scheme
    banner(f"iterated wreath on {s.n} points: composition series")
    for entry in composition_series(s):
        chain = entry["chain"]
        print("chain:", [sorted(map(repr, c.members)) for c in chain])
        for r, st in enumerate(composition_ideal_chain(s, chain)):
            print(f"  J_{r} =",
                  [g.render() for g in st["ideal"].generators])


def duality():
    banner("formal self-duality")
    for label, s in [("H(2,2)", catalog.hamming(2, 2).scheme),
                     ("H(3,2)", catalog.hamming(3, 2).scheme),
                     ("K5", catalog.complete(5).scheme),
                     ("Z4 (float)", catalog.cyclic_group(4).scheme)]:
        pairing = find_duality_pairing(s, s)
        rep = formal_duality_check(s, s, pairing)
        print(f"{label}: dual={rep['dual']}, "
              f"derived pairs={len(rep['derived'])}")


if __name__ == "__main__":
    multipartite()
    nonbinary_johnson()
    distance_regular()
    wreath_series()
    duality()
