#!/usr/bin/env python3
"""Run the imprimitivity-vs-structure census over the small-class catalog
and print one JSON line per scheme."""

import argparse
import json

from schemepoly import catalog, census_equivalence

DEFAULT = [
    ("trivial", ()),
    ("complete", (2,)), ("complete", (3,)), ("complete", (5,)),
    ("complete_multipartite", (3, 2)), ("complete_multipartite", (2, 2)),
    ("complete_multipartite", (4, 3)),
    ("hamming", (2, 2)), ("hamming", (3, 2)),
    ("johnson", (4, 2)), ("johnson", (5, 2)),
    ("graph_distance", ("petersen",)),
    ("graph_distance", ("cycle", 4)), ("graph_distance", ("cycle", 5)),
    ("graph_distance", ("cycle", 6)),
    ("graph_distance", ("hypercube", 3)), ("graph_distance", ("hypercube", 4)),
    ("nonbinary_johnson", (3, 2, 3)),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-classes", type=int, default=6,
                    help="skip schemes with more relation classes than this")
    args = ap.parse_args()
    mismatches = 0
    for family, params in DEFAULT:
        s = catalog.make_named_scheme((family, params)).scheme
        if s.d + 1 > args.max_classes or s.d < 1:
            continue
        rep = census_equivalence(s)
        rep["scheme"] = f"{family}{params}"
        rep["n"], rep["classes"] = s.n, s.d
        print(json.dumps(rep, sort_keys=True))
        if not rep["consistent"]:
            mismatches += 1
    print(json.dumps({"mismatches": mismatches}))
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
