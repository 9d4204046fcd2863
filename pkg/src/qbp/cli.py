"""Command-line entry point: ``qbp solve|build|params|verify|sweep``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from qbp.assembly import build_css
from qbp.formats import CodeFileError, ParseError, load_build, parse_code_spec, save_build, split_code_specs
from qbp.metrics import DEFAULT_MAX_KERNEL_DIM, code_params, split_families, sweep_table, table_to_csv
from qbp.poly import render
from qbp.solver import InvalidTripleError, check_triple, solve_fork
from qbp.verify import TARGETS

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


def _triple(args: argparse.Namespace) -> tuple[int, int, int]:
    try:
        check_triple(args.p, args.q, args.w)
    except InvalidTripleError as exc:
        raise UsageError(str(exc)) from None
    return args.p, args.q, args.w


def cmd_solve(args: argparse.Namespace) -> int:
    spec = solve_fork(*_triple(args))
    if args.json:
        print(spec.to_json())
        return EXIT_OK
    print(f"({spec.p},{spec.q},{spec.w}) X-boundary degree {spec.q - spec.w}")
    for lvl in spec.levels:
        gens = ", ".join(render(g) for g in lvl.canonical_generators) or "(none)"
        print(f"  t={lvl.t}: {gens}")
    return EXIT_OK


def cmd_build(args: argparse.Namespace) -> int:
    p, q, w = _triple(args)
    specs = split_code_specs(args.codes, p)
    if len(specs) != p:
        raise UsageError(f"need {p} code specs (or one to repeat), got {len(specs)}")
    codes = [parse_code_spec(s) for s in specs]
    code = build_css(solve_fork(p, q, w), codes)
    paths = save_build(code, Path(args.out), specs, args.format)
    for path in paths:
        print(path)
    return EXIT_OK


def cmd_params(args: argparse.Namespace) -> int:
    try:
        code = load_build(Path(args.base))
    except (ParseError, KeyError, json.JSONDecodeError) as exc:
        raise CodeFileError(f"cannot load build {args.base}: {exc}") from exc
    params = code_params(
        code, args.distance, trials=args.trials, seed=args.seed, max_kernel_dim=args.max_kernel_dim
    )
    print(json.dumps(params.to_dict(), indent=2))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    report = TARGETS[args.target](args.L)
    for line in report.lines:
        print(line)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_sweep(args: argparse.Namespace) -> int:
    families = split_families(args.families)
    rows = sweep_table(families, args.L, trials=args.trials, seed=args.seed,
                       max_kernel_dim=args.max_kernel_dim)
    text = table_to_csv(rows)
    if args.csv:
        Path(args.csv).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qbp", description="Quantum bootstrap product codes")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def triple(p: argparse.ArgumentParser) -> None:
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--w", type=int, required=True)

    solve = sub.add_parser("solve", help="solve the bootstrap equation symbolically")
    triple(solve)
    solve.add_argument("--json", action="store_true")
    solve.set_defaults(func=cmd_solve)

    build = sub.add_parser("build", help="assemble check matrices from classical codes")
    triple(build)
    build.add_argument("--codes", required=True, help="comma list of rep:L | alist:PATH | random:NxM:SEED")
    build.add_argument("--out", required=True, help="output base path")
    build.add_argument("--format", choices=["alist", "mtx"], default="alist")
    build.set_defaults(func=cmd_build)

    params = sub.add_parser("params", help="compute [[n,k,d]] of a saved build")
    params.add_argument("base")
    params.add_argument("--distance", choices=["auto", "exact", "estimate"], default="auto")
    params.add_argument("--trials", type=int, default=100)
    params.add_argument("--seed", type=int, default=0)
    params.add_argument("--max-kernel-dim", type=int, default=DEFAULT_MAX_KERNEL_DIM)
    params.set_defaults(func=cmd_params)

    verify = sub.add_parser("verify", help="check a named equivalence")
    verify.add_argument("--target", choices=sorted(TARGETS), required=True)
    verify.add_argument("--L", type=int, default=3)
    verify.set_defaults(func=cmd_verify)

    sweep = sub.add_parser("sweep", help="parameter table over code families")
    sweep.add_argument("--families", required=True, help="e.g. '[0,1,2,3],[1,2,3,3],4dtc'")
    sweep.add_argument("--L", type=int, required=True)
    sweep.add_argument("--csv", help="output path (stdout if omitted)")
    sweep.add_argument("--trials", type=int, default=20)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--max-kernel-dim", type=int, default=DEFAULT_MAX_KERNEL_DIM)
    sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (CodeFileError, OSError) as exc:
        print(f"qbp: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ParseError, ValueError) as exc:
        print(f"qbp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
