"""Command-line interface.

    diagsemi order <family> <n>
    diagsemi census <family> <n> [--raw|--up-to-conjugacy] [--stats]
                    [--jobs K] [--out DIR]
    diagsemi green <family> <n> [--json FILE]
    diagsemi fern <n> <dclass-index> --out FILE

Families: PB B PT T I S P IS Br TL (see README for the notation map).
DIAGSEMI_MAX_ELEMENTS overrides the feasibility bounds,
DIAGSEMI_NO_NUMBA=1 forces the pure-python kernels.

Exit status is 0 only when every verification the command performs
reports MATCH.
"""

import argparse
import os
import sys
from pathlib import Path

from . import catalog, census as census_mod, engine
from .elements import FAMILY_CODES, FAMILY_NAMES
from .formulas import family_order
from .kernels import get_backend


def _max_elements(default):
    value = os.environ.get("DIAGSEMI_MAX_ELEMENTS", "").strip()
    return int(value) if value else default


def _config_line(args, **extra):
    # jobs is deliberately left out: worker count never changes results,
    # and census outputs must be byte-identical across --jobs values
    fields = {"command": args.command}
    for key in ("family", "n", "dclass", "mode", "seed"):
        if hasattr(args, key):
            fields[key] = getattr(args, key)
    fields.update(extra)
    body = " ".join(f"{k}={v}" for k, v in fields.items())
    return f"diagsemi {body}"


def _enumerate(family, n, limit):
    gens = catalog.standard_generators(family, n)
    return engine.enumerate_family(gens, limit=limit)


def cmd_order(args):
    expected = family_order(args.family, args.n)
    print(f"{args.family}_{args.n} ({FAMILY_NAMES[args.family]})")
    print(f"closed form: {expected}")
    limit = _max_elements(100000)
    if not catalog.supports(args.family, args.n):
        print("enumeration skipped (no catalog generating set for this degree)")
        return 0
    if expected > limit:
        print(f"enumeration skipped (infeasible: order exceeds {limit})")
        return 0
    S = _enumerate(args.family, args.n, limit)
    verdict = "MATCH" if len(S) == expected else "MISMATCH"
    print(f"enumerated:  {len(S)}  {verdict}")
    return 0 if verdict == "MATCH" else 1


def cmd_census(args):
    limit = _max_elements(census_mod.DEFAULT_MAX_ELEMENTS)
    S = _enumerate(args.family, args.n, None)
    backend = get_backend(width=len(S))
    config = _config_line(args, backend=backend.name, ambient=len(S))

    if args.family == "S":
        total = census_mod.subgroup_census(S, jobs=args.jobs)
        print(f"subgroup classes of S_{args.n} up to conjugacy: {total}")
        if args.raw:
            print("(the symmetric-group row always counts conjugacy classes "
                  "of nonempty subgroups)")
        return 0

    if args.raw:
        total = census_mod.all_subsemigroups(S, mode="count", backend=backend,
                                             max_elements=limit)
        print(f"subsemigroups of {args.family}_{args.n}: {total}")
        return 0

    records, raw_total = census_mod.census_up_to_conjugacy(
        S, backend=backend, max_elements=limit, jobs=args.jobs)
    print(f"subsemigroups of {args.family}_{args.n} up to conjugacy: {len(records)}")
    print(f"raw subsemigroups: {raw_total}")
    if args.stats:
        out = Path(args.out or ".")
        out.mkdir(parents=True, exist_ok=True)
        stem = f"census_{args.family}{args.n}"
        census_mod.write_records_jsonl(out / f"{stem}.jsonl", records, config)
        census_mod.write_histogram_csv(
            out / f"{stem}_sizes.csv", census_mod.size_histogram(records), config)
        census_mod.write_histogram_csv(
            out / f"{stem}_sizes_nontrivial_perm.csv",
            census_mod.size_histogram(records, only_nontrivial_perm=True), config)
        for metric in ("d-classes", "idempotents"):
            name = metric.replace("-", "")
            census_mod.write_joint_csv(
                out / f"{stem}_size_vs_{name}.csv",
                census_mod.joint_histogram(records, metric), metric, config)
        print(f"stats written to {out}/{stem}_*.csv and {stem}.jsonl")
    return 0


def cmd_green(args):
    limit = _max_elements(100000)
    S = _enumerate(args.family, args.n, limit)
    green = engine.green_structure(S)
    n_d = green.n_d_classes()
    chain = all((green.d_order[i + 1], green.d_order[i]) in green.d_leq
                for i in range(n_d - 1))
    print(f"{args.family}_{args.n}: {len(S)} elements, "
          f"{n_d} D-class{'es' if n_d != 1 else ''}"
          f"{' (linearly ordered)' if chain and n_d > 1 else ''}")
    for pos in range(n_d):
        box = green.eggbox(pos)
        size = len(green.d_class_elements(green.d_order[pos]))
        idem = int(box.idempotent_mask.sum())
        print(f"  D[{pos}]: {size} elements, eggbox "
              f"{len(box.row_classes)}x{len(box.col_classes)}, "
              f"{idem} idempotent cells")
    if args.json:
        engine.write_green_json(args.json, green, _config_line(args))
        print(f"green structure written to {args.json}")
    return 0


def cmd_fern(args):
    cap = _max_elements(12)
    if args.n > cap:
        print(f"fern degree {args.n} over the cap of {cap}", file=sys.stderr)
        return 2
    S = _enumerate("TL", args.n, None)
    green = engine.green_structure(S)
    if not 0 <= args.dclass < green.n_d_classes():
        print(f"TL_{args.n} has no D-class index {args.dclass}", file=sys.stderr)
        return 2
    box = green.eggbox(args.dclass)
    engine.write_pgm(args.out, box.idempotent_mask, _config_line(args))
    black = int(box.idempotent_mask.sum())

    # cross-check against a direct x*x == x scan of that D-class
    d_id = green.d_order[args.dclass]
    brute = sum(1 for i in green.d_class_elements(d_id)
                if S.elements[i] * S.elements[i] == S.elements[i])
    verdict = "MATCH" if black == brute else "MISMATCH"
    print(f"TL_{args.n} D[{args.dclass}]: "
          f"{box.idempotent_mask.shape[0]}x{box.idempotent_mask.shape[1]} bitmap, "
          f"{black} idempotent cells (brute-force {brute}, {verdict})")
    print(f"wrote {args.out}")
    return 0 if verdict == "MATCH" else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="diagsemi",
        description="diagram semigroups: orders, censuses, Green's structure")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", help="closed-form order, checked by enumeration")
    p.add_argument("family", choices=FAMILY_CODES)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("census", help="subsemigroup census")
    p.add_argument("family", choices=FAMILY_CODES)
    p.add_argument("n", type=int)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--raw", action="store_true",
                      help="count all subsemigroups, no conjugacy folding")
    mode.add_argument("--up-to-conjugacy", dest="conj", action="store_true",
                      help="fold by the ambient symmetry group (default)")
    p.add_argument("--stats", action="store_true",
                   help="write histogram CSVs and a JSONL record stream")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None, help="output directory for --stats")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("green", help="Green's structure summary")
    p.add_argument("family", choices=FAMILY_CODES)
    p.add_argument("n", type=int)
    p.add_argument("--json", default=None, help="write the structure as JSON")
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("fern", help="idempotent bitmap of a TL_n D-class")
    p.add_argument("n", type=int)
    p.add_argument("dclass", type=int, help="D-class index, descending rank")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fern)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (catalog.UnsupportedFamilyDegree, census_mod.FeasibilityError,
            engine.LimitExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
