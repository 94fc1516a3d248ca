"""Command-line entry point: ``rootfield {root,bench,genprime,residue}``.

Field elements and moduli are read and printed as hexadecimal without
prefix; r, bit sizes and counts are decimal. Results go to stdout,
diagnostics to stderr. Errors exit with the code attached to their class
(NON_RESIDUE=3, NOT_APPLICABLE=4, WITNESS_SEARCH_FAILED=5,
INTERNAL_INCONSISTENCY=6, PRIME_SEARCH_FAILED=7, NON_INVERTIBLE=8,
BUDGET_EXCEEDED=9; usage errors exit 2). ``--seed`` falls back to
the ``ROOTFIELD_SEED`` environment variable, then to 0.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import bench
from .errors import RootfieldError, UsageError
from .fp import FieldCtx, Fe, from_hex, gen_prime_1_mod_r, to_hex
from .roots import AlgoId, RootProblem, all_roots, extract, is_rth_residue

PHASES = ("residue", "witness", "accumulation", "exponentiation", "assembly", "verify")


def _seed(value):
    if value is None:
        value = os.environ.get("ROOTFIELD_SEED", "0")
    try:
        return int(value)
    except ValueError:
        return value


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _problem(args) -> RootProblem:
    field = FieldCtx(from_hex(args.p))
    return RootProblem(field, args.r, Fe(from_hex(args.c), field))


def cmd_root(args, out) -> int:
    prob = _problem(args)
    x, w, counter = extract(prob, AlgoId.parse(args.alg), _seed(args.seed))
    report = {"x": x.hex()}
    if w is not None:
        report.update(b=w.b.hex(), omega=w.omega.hex(), witness_trials=w.trials)
    report["mults"] = {ph: counter.phases.get(ph, 0) for ph in PHASES}
    report["mults"]["total"] = counter.total
    if args.all:
        roots = all_roots(prob, x, w) if w is not None else [x]
        report["roots"] = [y.hex() for y in roots]
    if args.format == "json":
        print(json.dumps(report, indent=2), file=out)
        return 0
    for key, val in report.items():
        if key == "mults":
            for ph, n in val.items():
                print(f"mults.{ph}={n}", file=out)
        elif key == "roots":
            print("roots=" + ",".join(val), file=out)
        else:
            print(f"{key}={val}", file=out)
    return 0


def cmd_bench(args, out) -> int:
    cfg = bench.BenchConfig(
        bits=args.bits,
        r_list=tuple(args.r_list),
        algos=tuple(args.algos),
        trials=args.trials,
        seed=_seed(args.seed),
        format=args.format,
        time_budget=args.time_budget,
    )
    log = None if args.quiet else (lambda msg: print(msg, file=sys.stderr, flush=True))
    cells = bench.run_bench(cfg, log)
    out.write(bench.format_cells(cells, cfg.format))
    if cfg.format == "json":
        out.write("\n")
    if not args.quiet:
        print(bench.table(cells), file=sys.stderr)
    return 0


def cmd_genprime(args, out) -> int:
    p = gen_prime_1_mod_r(args.bits, args.r, seed=_seed(args.seed))
    print(to_hex(p), file=out)
    return 0


def cmd_residue(args, out) -> int:
    ok = is_rth_residue(_problem(args))
    print("true" if ok else "false", file=out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rootfield", description="r-th roots in prime fields")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("root", help="extract an r-th root of c mod p")
    p.add_argument("--p", required=True, help="prime modulus (hex)")
    p.add_argument("--r", required=True, type=int)
    p.add_argument("--c", required=True, help="target residue (hex)")
    p.add_argument("--alg", default="new", choices=["hc", "wh", "new"])
    p.add_argument("--seed")
    p.add_argument("--all", action="store_true", help="print the full sorted root set")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_root)

    p = sub.add_parser("bench", help="compare the algorithms over a sweep of r")
    p.add_argument("--bits", type=int, default=512)
    p.add_argument("--r-list", type=_int_list, default=[3, 4, 43, 101])
    p.add_argument("--algos", type=lambda s: [AlgoId.parse(a) for a in s.split(",")],
                   default=list(AlgoId))
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--time-budget", type=float, default=600.0, help="seconds per cell")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("genprime", help="generate a prime p = 1 (mod r)")
    p.add_argument("--bits", required=True, type=int)
    p.add_argument("--r", required=True, type=int)
    p.add_argument("--seed")
    p.set_defaults(func=cmd_genprime)

    p = sub.add_parser("residue", help="test whether c is an r-th power mod p")
    p.add_argument("--p", required=True)
    p.add_argument("--r", required=True, type=int)
    p.add_argument("--c", required=True)
    p.set_defaults(func=cmd_residue)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except RootfieldError as e:
        print(f"error: {e.code}: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
