"""Command-line surface.

Subcommands: verify a scenario file against the bound, run the two-spin
demo, sweep random ensembles, and search for the weakest feasible
interaction. Exit codes: 0 success, 1 input error, 2 bound violation
(a numerical-inconsistency alarm that must fail CI loudly), 3 search
infeasible within budget.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .errors import ContractError, ScenarioFileError
from .optimize import InteractionParametrization, hermitian_basis, minimize_interaction, sweep_slack
from .serialize import (
    dump_document,
    load_fixed_parts,
    load_scenario,
    report_to_document,
    write_sweep_csv,
)
from .tradeoff import build_spin_demo, check_energy_tradeoff, check_tradeoff, nogo_verdict

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATION = 2
EXIT_INFEASIBLE = 3


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems with the input-error exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _print_table(doc: dict, out) -> None:
    width = max(len(k) for k in doc)
    for key, value in doc.items():
        if isinstance(value, float):
            value = repr(value)
        elif isinstance(value, (list, dict)):
            value = f"<{type(value).__name__} of {len(value)} entries>"
        print(f"{key:<{width}}  {value}", file=out)


def _emit(doc: dict, as_json: bool, out) -> None:
    if as_json:
        print(dump_document(doc), file=out)
    else:
        _print_table(doc, out)


def _parse_complex(text: str, flag: str) -> complex:
    try:
        return complex(text)
    except ValueError:
        raise ContractError(f"{flag} must be a real or complex number, got {text!r}")


def _parse_dims_list(text: str) -> list[tuple[int, int]]:
    dims = []
    for chunk in text.split(","):
        parts = chunk.lower().split("x")
        if len(parts) != 2:
            raise ContractError(f"bad dims entry {chunk!r}, expected AxB")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ContractError(f"bad dims entry {chunk!r}, expected integers AxB")
        if a < 1 or b < 1:
            raise ContractError(f"bad dims entry {chunk!r}, dimensions must be positive")
        dims.append((a, b))
    return dims


def cmd_verify(args, out=sys.stdout, err=sys.stderr) -> int:
    try:
        scenario = load_scenario(args.path)
        report = check_tradeoff(scenario, slack_tol=args.tolerance)
    except (OSError, ScenarioFileError, ContractError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    doc = report_to_document(report)
    _emit(doc, args.json, out)
    return EXIT_OK if report.holds else EXIT_VIOLATION


def cmd_spin_demo(args, out=sys.stdout, err=sys.stderr) -> int:
    try:
        alpha = _parse_complex(args.alpha, "--alpha")
        beta = _parse_complex(args.beta, "--beta")
        time = args.time if args.time is not None else math.pi / (2.0 * args.eps)
        scenario = build_spin_demo(alpha, beta, args.eps, time)
        report = check_energy_tradeoff(scenario, slack_tol=args.tolerance)
    except ContractError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    doc = report_to_document(report)
    doc["verdict"] = nogo_verdict(report)
    doc["time"] = time
    _emit(doc, args.json, out)
    return EXIT_OK if report.holds else EXIT_VIOLATION


def cmd_sweep(args, out=sys.stdout, err=sys.stderr) -> int:
    try:
        dims_list = _parse_dims_list(args.dims)
        if args.count < 1:
            raise ContractError("--count must be at least 1")
        summary = sweep_slack(
            dims_list,
            args.count,
            root_seed=args.seed,
            time_range=(0.0, args.tmax),
            slack_tol=args.tolerance,
        )
    except ContractError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    if args.csv:
        write_sweep_csv(summary, out)
        print(
            f"instances={summary.n_instances} min_slack={summary.min_slack!r} "
            f"mean_slack={summary.mean_slack!r} violations={summary.violations}",
            file=err,
        )
    else:
        doc = report_to_document(summary)
        if not args.json:
            doc.pop("rows")
        _emit(doc, args.json, out)
    return EXIT_VIOLATION if summary.violations else EXIT_OK


def cmd_optimize(args, out=sys.stdout, err=sys.stderr) -> int:
    try:
        fixed = load_fixed_parts(args.path)
        if not (0.0 < args.delta < 1.0):
            raise ContractError(f"--delta must lie in (0, 1), got {args.delta!r}")
        if args.budget < 1:
            raise ContractError("--budget must be at least 1")
        basis = fixed.basis
        if basis is None:
            basis = tuple(hermitian_basis(fixed.dim_a * fixed.dim_b))
        param = InteractionParametrization(
            basis=basis, coefficients=np.zeros(len(basis))
        )
        result = minimize_interaction(
            fixed.h_a,
            fixed.h_b,
            fixed.sigma,
            fixed.psi0,
            fixed.psi1,
            fixed.time,
            param,
            delta=args.delta,
            budget=args.budget,
            seed=args.seed,
        )
    except (OSError, ScenarioFileError, ContractError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    doc = report_to_document(result)
    _emit(doc, args.json, out)
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="infodist",
        description=(
            "Check the interaction-strength bound for distributing a "
            "classical bit between two quantum systems."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="check a scenario file against the bound")
    p_verify.add_argument("path", help="scenario file (JSON)")
    p_verify.add_argument("--tolerance", type=float, default=1e-8,
                          help="slack below -tolerance counts as a violation")
    group = p_verify.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true", help="machine-readable report")
    group.add_argument("--table", action="store_true", help="human-readable report (default)")
    p_verify.set_defaults(func=cmd_verify)

    p_spin = sub.add_parser("spin-demo", help="run the exactly solvable two-spin scenario")
    p_spin.add_argument("--alpha", required=True, help="encoding amplitude on |1>")
    p_spin.add_argument("--beta", required=True, help="encoding amplitude on |-1>")
    p_spin.add_argument("--eps", type=float, required=True, help="interaction strength")
    p_spin.add_argument("--time", type=float, default=None,
                        help="interaction time (default pi/(2 eps))")
    p_spin.add_argument("--tolerance", type=float, default=1e-8)
    group = p_spin.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true")
    group.add_argument("--table", action="store_true")
    p_spin.set_defaults(func=cmd_spin_demo)

    p_sweep = sub.add_parser("sweep", help="Monte-Carlo check over random scenarios")
    p_sweep.add_argument("--dims", default="2x2",
                         help="comma list of AxB dimension pairs, e.g. 2x2,2x3,3x3")
    p_sweep.add_argument("--count", type=int, required=True, help="number of instances")
    p_sweep.add_argument("--seed", type=int, default=0, help="root seed")
    p_sweep.add_argument("--tmax", type=float, default=20.0, help="interaction times drawn from [0, tmax]")
    p_sweep.add_argument("--tolerance", type=float, default=1e-8)
    group = p_sweep.add_mutually_exclusive_group()
    group.add_argument("--csv", action="store_true", help="per-instance rows as CSV on stdout")
    group.add_argument("--json", action="store_true")
    group.add_argument("--table", action="store_true")
    p_sweep.set_defaults(func=cmd_sweep)

    p_opt = sub.add_parser("optimize", help="search for the weakest feasible interaction")
    p_opt.add_argument("path", help="fixed-parts file (JSON): dims, h_a, h_b, psi0, psi1, sigma, time, optional basis")
    p_opt.add_argument("--delta", type=float, required=True,
                       help="target fidelity on both sides, in (0, 1)")
    p_opt.add_argument("--budget", type=int, default=5000, help="objective evaluation cap")
    p_opt.add_argument("--seed", type=int, default=0)
    p_opt.add_argument("--json", action="store_true")
    p_opt.set_defaults(func=cmd_optimize)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
