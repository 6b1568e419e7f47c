"""Command-line front end.

Every subcommand prints a deterministic JSON report (no timing fields) to
stdout or --out and exits 0 when all requested checks pass, 1 when a check
fails, 2 on usage errors.  --order and --domain accept either inline JSON or
a path to a JSON file.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import catalog, verify
from .errors import SchemeError
from .imprimitivity import (all_closed_subsets, block_scheme, closure,
                            composition_ideal_chain, composition_series,
                            dual_closed_subset, quotient_scheme)
from .mpoly import MPoly, buchberger, elimination_ideal
from .orders import make_order
from .products import (DualityPairing, crested_product, direct_product,
                       find_duality_pairing, formal_duality_check,
                       recognize_direct_product)
from .scheme import (dump_scheme, load_scheme, normalize_label,
                     scheme_to_json)
from .structure import (Domain, boundary_ideal_generators, check_p_structure,
                        check_q_structure)


def _json_arg(text):
    if text is None:
        return None
    if os.path.exists(text):
        with open(text) as fh:
            return json.load(fh)
    return json.loads(text)


def _labels_arg(text):
    return frozenset(normalize_label(t) for t in _json_arg(text))


def _emit(report, out):
    text = json.dumps(report, indent=1, sort_keys=True, default=str)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _domain_order(args, scheme=None):
    dom = Domain.from_json(_json_arg(args.domain)) if args.domain else None
    ell = dom.ell if dom else None
    order = make_order(_json_arg(args.order), ell=ell) if args.order else None
    return dom, order


def _scheme(args):
    return load_scheme(args.scheme, mode=args.mode)


def main(argv=None):
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["exact", "float"], default="exact")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out")
    ap = argparse.ArgumentParser(prog="schemepoly")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, *flags):
        p = sub.add_parser(name, parents=[common])
        for f in flags:
            p.add_argument(f)
        return p

    add("validate", "--scheme")
    add("invariants", "--scheme")
    add("closed-subsets", "--scheme")
    add("quotient", "--scheme", "--closed")
    add("block", "--scheme", "--closed").add_argument(
        "--x0", type=int, default=0)
    add("check-ppoly", "--scheme", "--domain", "--order")
    add("check-qpoly", "--scheme", "--domain", "--order")
    add("polys", "--scheme", "--domain", "--order")
    add("groebner", "--scheme", "--domain", "--order")
    add("eliminate", "--scheme", "--domain", "--order").add_argument(
        "--split", type=int, required=True)
    add("verify-thm41", "--scheme")
    add("verify-thm45", "--scheme", "--domain", "--order", "--closed")
    add("verify-thm46", "--scheme", "--domain", "--order", "--closed").add_argument(
        "--x0", type=int, default=0)
    add("verify-thm47", "--scheme", "--domain", "--order", "--closed").add_argument(
        "--x0", type=int, default=0)
    add("product", "--scheme", "--scheme2")
    add("crested", "--scheme", "--closed", "--scheme2", "--closed2")
    add("recognize-product", "--scheme")
    add("duality", "--scheme", "--scheme2", "--pairing")
    add("series", "--scheme").add_argument("--x0", type=int, default=0)
    mk = add("make", "--family", "--params")

    args = ap.parse_args(argv)
    report = {"command": args.cmd, "checks": []}
    ok = True

    def check(name, outcome, **extra):
        nonlocal ok
        entry = {"name": name, "outcome": "pass" if outcome else "fail"}
        entry.update(extra)
        report["checks"].append(entry)
        ok = ok and bool(outcome)

    try:
        if args.cmd == "validate":
            s = _scheme(args)
            check("axioms", True, n=s.n, classes=s.d)

        elif args.cmd == "invariants":
            s = _scheme(args)
            t = s.tensor()
            e = s.eigen(seed=args.seed)
            report["valencies"] = {repr(l): t.valencies[l] for l in s.labels}
            report["P"] = [[str(v) for v in row] for row in e.P]
            report["Q"] = [[str(v) for v in row] for row in e.Q]
            report["multiplicities"] = [str(m) for m in e.multiplicities]
            check("eigen", True)

        elif args.cmd == "closed-subsets":
            s = _scheme(args)
            subs = all_closed_subsets(s)
            report["closed_subsets"] = [
                {"members": sorted(map(repr, c.members)), "p": c.p, "q": c.q,
                 "dual": sorted(dual_closed_subset(s, c))}
                for c in subs]
            check("enumerated", True, count=len(subs))

        elif args.cmd == "quotient":
            s = _scheme(args)
            c = closure(s, _labels_arg(args.closed))
            qd = quotient_scheme(s, c)
            report["scheme"] = scheme_to_json(qd.scheme)
            report["label_map"] = {repr(k): repr(v)
                                   for k, v in sorted(qd.label_map.items(),
                                                      key=lambda kv: repr(kv[0]))}
            check("quotient", True, classes=qd.scheme.d)

        elif args.cmd == "block":
            s = _scheme(args)
            c = closure(s, _labels_arg(args.closed))
            bd = block_scheme(s, c, args.x0)
            report["scheme"] = scheme_to_json(bd.scheme)
            report["points"] = list(bd.points)
            check("block", True, classes=bd.scheme.d)

        elif args.cmd in ("check-ppoly", "check-qpoly"):
            s = _scheme(args)
            dom, order = _domain_order(args)
            fn = check_p_structure if args.cmd == "check-ppoly" \
                else check_q_structure
            verdict = fn(s, dom, order)
            check("structure", verdict.holds,
                  violations=[repr(v) for v in verdict.violations[:5]])

        elif args.cmd == "polys":
            s = _scheme(args)
            dom, order = _domain_order(args)
            fam = boundary_ideal_generators(s, dom, order)
            report["v"] = {",".join(map(str, a)): p.render()
                           for a, p in sorted(fam.v.items())}
            report["w"] = {",".join(map(str, b)): p.render()
                           for b, p in sorted(fam.w.items())}
            check("polys", True)

        elif args.cmd == "groebner":
            s = _scheme(args)
            dom, order = _domain_order(args)
            fam = boundary_ideal_generators(s, dom, order)
            gb = buchberger(list(fam.generators), order)
            report["basis"] = gb.to_json()
            check("groebner", True, size=len(gb.generators))

        elif args.cmd == "eliminate":
            s = _scheme(args)
            dom, order = _domain_order(args)
            fam = boundary_ideal_generators(s, dom, order)
            gb = buchberger(list(fam.generators), order)
            elim = elimination_ideal(gb, args.split)
            report["basis"] = elim.to_json()
            check("eliminate", True, size=len(elim.generators))

        elif args.cmd == "verify-thm41":
            s = _scheme(args)
            rep = verify.census_equivalence(s)
            report["thm41"] = rep
            check("thm41", rep["consistent"])

        elif args.cmd == "verify-thm45":
            s = _scheme(args)
            dom, order = _domain_order(args)
            c = closure(s, _labels_arg(args.closed))
            rep = verify.quotient_transfer_report(s, dom, order, c)
            report["thm45"] = rep
            check("thm45", rep["holds"])

        elif args.cmd == "verify-thm46":
            s = _scheme(args)
            dom, order = _domain_order(args)
            c = closure(s, _labels_arg(args.closed))
            rep = verify.block_transfer_report(s, dom, order, c, args.x0)
            report["thm46"] = rep
            check("thm46", rep["holds"])

        elif args.cmd == "verify-thm47":
            s = _scheme(args)
            dom, order = _domain_order(args)
            c = closure(s, _labels_arg(args.closed))
            rep = verify.verify_block_quotient_ideals(s, dom, order, c, args.x0)
            report["thm47"] = rep
            check("thm47", rep["block_holds"] and rep["quotient_holds"])

        elif args.cmd == "product":
            s1 = load_scheme(args.scheme, mode=args.mode)
            s2 = load_scheme(args.scheme2, mode=args.mode)
            prod = direct_product(s1, s2)
            report["scheme"] = scheme_to_json(prod.scheme)
            check("product", True, classes=prod.scheme.d)

        elif args.cmd == "crested":
            s1 = load_scheme(args.scheme, mode=args.mode)
            s2 = load_scheme(args.scheme2, mode=args.mode)
            prod = crested_product(s1, _labels_arg(args.closed),
                                   s2, _labels_arg(args.closed2))
            report["scheme"] = scheme_to_json(prod.scheme)
            check("crested", True, classes=prod.scheme.d)

        elif args.cmd == "recognize-product":
            s = _scheme(args)
            hit = recognize_direct_product(s)
            if hit is None:
                report["factors"] = []
                check("recognize", True, recognized=False)
            else:
                f1, f2, pmap = hit
                report["factors"] = [scheme_to_json(f1), scheme_to_json(f2)]
                report["point_map"] = list(pmap)
                check("recognize", True, recognized=True)

        elif args.cmd == "duality":
            sX = load_scheme(args.scheme, mode=args.mode)
            sY = load_scheme(args.scheme2 or args.scheme, mode=args.mode)
            if args.pairing:
                pj = _json_arg(args.pairing)
                pairing = DualityPairing(
                    ij={normalize_label(json.loads(k) if k.startswith("[")
                                        else int(k)): v
                        for k, v in pj["ij"].items()},
                    ji={int(k): normalize_label(v) for k, v in pj["ji"].items()})
            else:
                pairing = find_duality_pairing(sX, sY)
                if pairing is None:
                    check("duality", False, reason="no pairing found")
                    _emit(report, args.out)
                    return 1
            rep = formal_duality_check(sX, sY, pairing)
            report["duality"] = {
                "dual": rep["dual"],
                "derived": rep["derived"],
                "failures": [repr(f) for f in rep["failures"]]}
            check("duality", rep["dual"])

        elif args.cmd == "series":
            s = _scheme(args)
            chains = composition_series(s, args.x0)
            out = []
            for entry in chains:
                chain = entry["chain"]
                stages = composition_ideal_chain(s, chain, args.x0)
                out.append({
                    "chain": [sorted(map(repr, c.members)) for c in chain],
                    "factors": [st["factor"].d for st in entry["stages"]],
                    "ideals": [[g.render() for g in st["ideal"].generators]
                               for st in stages]})
            report["series"] = out
            check("series", True, chains=len(out))

        elif args.cmd == "make":
            params = tuple(json.loads(f"[{args.params}]")) if args.params else ()
            entry = catalog.make_named_scheme((args.family, params))
            report["scheme"] = scheme_to_json(entry.scheme)
            if entry.domain is not None:
                report["domain"] = entry.domain.to_json()
            if entry.order is not None:
                report["order"] = entry.order.to_json()
            if args.out:
                dump_scheme(entry.scheme, args.out)
                args.out = None  # scheme file already written
            check("make", True, n=entry.scheme.n)

    except SchemeError as exc:
        check(type(exc).__name__, False, witness=str(exc))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"schemepoly: {exc}", file=sys.stderr)
        return 2

    _emit(report, args.out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
