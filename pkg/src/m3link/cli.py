"""Command-line entry point ``m3link``.

Exit status: 0 when every check is PASS or as expected, 1 on any unexpected
FAIL, 2 on usage errors.
"""

import argparse
import json
import sys

from .errors import M3LinkError


def _emit(obj, as_json, text):
    if as_json:
        print(json.dumps(obj, indent=2))
    else:
        print(text)


def _load_manifold(ref):
    from .manifolds import ManifoldDescription, catalog_entry

    if ref.startswith("catalog:"):
        return catalog_entry(ref[len("catalog:"):]).manifold
    with open(ref) as fh:
        return ManifoldDescription.from_json(fh.read())


def _resolution(G, kind, horizon):
    from .groupcoh.resolution import bar_resolution, special_resolution

    return bar_resolution(G, horizon) if kind == "bar" else special_resolution(G, horizon)


def cmd_linking(args):
    from .manifolds import first_homology, linking_form

    M = _load_manifold(args.manifold)
    lf = linking_form(M)
    H1, _ = first_homology(M)
    obj = {"manifold": M.label(), "H1": str(H1), "linking": lf.to_json_obj()}
    rows = "\n".join("  " + "  ".join(f"{str(v):>6}" for v in row) for row in lf.gram)
    _emit(obj, args.json, f"{M.label()}: H_1 = {H1}\n{rows}")
    return 0


def cmd_cohomology(args):
    from .groupcoh.cohomology import cohomology
    from .groupcoh.groups import group_from_tag

    G = group_from_tag(args.group)
    coeffs = {"z": "Z", "qz": "QmodZ"}.get(args.coeffs, args.coeffs)
    extra = 2 if coeffs == "QmodZ" else 1
    R = _resolution(G, args.resolution, args.degree + extra)
    H = cohomology(R, args.degree, coeffs)
    obj = {"group": args.group, "degree": args.degree, "coeffs": str(H.coeffs),
           "resolution": R.strategy, "factors": list(H.group.factors),
           "free_rank": H.free_rank}
    text = str(H.group) if not H.free_rank else f"Z^{H.free_rank} + {H.group}"
    _emit(obj, args.json, f"H^{args.degree}({args.group}; {H.coeffs}) = {text}")
    return 0


def cmd_cup_pairing(args):
    from .groupcoh.cup import cup_pairing_gram
    from .groupcoh.groups import group_from_tag

    cup = cup_pairing_gram(_resolution(group_from_tag(args.group), args.resolution, 5))
    lines = [f"H^2 = {cup.h2}", f"H^4 = {cup.h4}", f"C = {cup.image}",
             f"cyclic: {cup.cyclic}", f"non-degenerate: {cup.nondegenerate}", "gram:"]
    for row in cup.gram:
        lines.append("  " + "  ".join(str(list(x.coords)) for x in row))
    _emit(cup.to_json_obj(), args.json, "\n".join(lines))
    return 0


def _verify_one(args):
    from .manifolds import catalog_entry
    from .verifier import FAIL, QuotientSpec, check_features, check_reznikov, check_theorem1

    entry = catalog_entry(args.entry)
    if args.check == "reznikov":
        rep = check_reznikov(entry)
    else:
        spec = QuotientSpec.from_entry(entry, args.depth)
        rep = check_theorem1(spec).to_json_obj() if args.check == "theorem1" \
            else check_features(spec)
    text = "\n".join(f"{k}: {v}" for k, v in rep.items())
    _emit(rep, args.json, text)
    want = entry.expected.get(args.check)
    return 1 if rep["verdict"] == FAIL and want != FAIL else 0


def _verify_all(args):
    from .verifier import run_catalog

    run = run_catalog(args.filter, workers=args.workers)
    if args.json:
        print(json.dumps(run.to_json_obj(full=args.full), indent=2))
    else:
        for e in run.entries:
            marks = " ".join(f"{c}={v}" for c, v in e["checks"].items())
            flag = "  UNEXPECTED" if e["unexpected"] else ""
            print(f"{e['id']:<18} {e['name']:<18} {marks}{flag}")
        print(f"{len(run.entries)} entries; counts {run.counts()}")
    return run.exit_status


def _verify_counterexample(args):
    from .verifier import counterexample_demo

    rep = counterexample_demo()
    text = (f"RP3#RP3 linking form {rep.linking}\n"
            f"cup image {rep.cup.image} (rank {rep.image_rank}, cyclic: {rep.cyclic})\n"
            f"relations {rep.relations}")
    _emit(rep.to_json_obj(), args.json, text)
    return 0


def cmd_verify(args):
    if args.check == "all":
        return _verify_all(args)
    if args.check == "counterexample":
        return _verify_counterexample(args)
    if not args.entry:
        raise _Usage(f"verify {args.check} needs --entry")
    return _verify_one(args)


def cmd_catalog(args):
    from .manifolds import filter_catalog

    entries = filter_catalog(args.filter)
    if args.json:
        print(json.dumps([e.to_json_obj() for e in entries], indent=2))
    else:
        for e in entries:
            order = e.pi1_finite_order if e.pi1_finite_order else "inf"
            print(f"{e.id:<18} {e.name:<18} |pi1|={order:<4} depth={e.theorem_depth}")
    return 0


class _Usage(Exception):
    pass


def build_parser():
    ap = argparse.ArgumentParser(prog="m3link", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("linking", help="linking form of a manifold")
    p.add_argument("manifold", help="manifest JSON file or catalog:<id>")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_linking)

    p = sub.add_parser("cohomology", help="group cohomology in one degree")
    p.add_argument("--group", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--coeffs", default="z", help="z, qz or an integer modulus")
    p.add_argument("--resolution", choices=["bar", "special"], default="special")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("cup-pairing", help="cup pairing on degree-two cohomology")
    p.add_argument("--group", required=True)
    p.add_argument("--resolution", choices=["bar", "special"], default="special")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cup_pairing)

    p = sub.add_parser("verify", help="theorem-level checks")
    p.add_argument("check", choices=["theorem1", "features", "reznikov", "all", "counterexample"])
    p.add_argument("--entry", help="catalog id")
    p.add_argument("--depth", type=int, choices=[1, 2], help="derived depth override")
    p.add_argument("--filter", help="substring of catalog ids (verify all)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--full", action="store_true", help="include per-check reports in --json")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="catalog listing")
    p.add_argument("action", choices=["list"])
    p.add_argument("--filter")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (_Usage, KeyError, ValueError, FileNotFoundError, M3LinkError) as exc:
        print(f"m3link: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
