"""Command-line interface.

Four subcommands: ``rebalance`` (apply one rule to a universe file and
write a report), ``solve`` (calibrate the exponent to a concentration
bound), ``diagnose`` (compare two weight files for pathologies), and
``compare`` (run several rules side by side).

Exit codes: 0 success/clean, 1 usage error, 2 input error, 3 infeasible
solve, 4 pathology detected by diagnose. Console numbers are rendered to
6 significant digits; report files carry full precision.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .calibration import CalibrationTarget, solve_exponent
from .diagnostics import DiagnosticsReport, compare_methods, diagnostics_report
from .errors import InfeasibleError, RebalanceError
from .io import parse_universe, read_weight_file, report_payload, write_report
from .transforms import (
    CapRule,
    LinearizedPowerRule,
    PowerRule,
    RebalanceRule,
    apply_rule,
)
from .weights import weights_from_market_caps

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_PATHOLOGY = 4

MAX_VIOLATIONS_LISTED = 20


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(f"{self.format_usage()}error: {message}")


def _g(value: float) -> str:
    """6-significant-digit console rendering."""
    return f"{value:.6g}"


def build_parser() -> _Parser:
    parser = _Parser(
        prog="powerindex",
        description=(
            "Rebalance capitalization-weighted index weights with power "
            "transforms, calibrate the exponent to concentration targets, "
            "and diagnose rebalance pathologies."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rb = sub.add_parser("rebalance", help="apply one reweighting rule")
    rb.add_argument("--input", required=True, help="constituent CSV")
    rb.add_argument(
        "--method", required=True, choices=["power", "linpower", "cap"]
    )
    rb.add_argument("--p", type=float, help="exponent in [0, 1]")
    rb.add_argument("--knot", type=float, default=0.01)
    rb.add_argument("--threshold", type=float, default=0.045)
    rb.add_argument(
        "--target-aggregate", dest="target_aggregate", type=float, default=0.40
    )
    rb.add_argument("--output", required=True, help="report file to write")
    rb.add_argument("--format", choices=["csv", "json"], default="csv")

    so = sub.add_parser("solve", help="calibrate the exponent to a bound")
    so.add_argument("--input", required=True, help="constituent CSV")
    so.add_argument("--target", required=True, choices=["max", "top-k"])
    so.add_argument("--k", type=int, help="k for the top-k target")
    so.add_argument("--bound", type=float, required=True)
    so.add_argument("--tol", type=float, default=1e-10)

    dg = sub.add_parser("diagnose", help="compare two weight files")
    dg.add_argument("--before", required=True)
    dg.add_argument("--after", required=True)

    cp = sub.add_parser("compare", help="run several rules side by side")
    cp.add_argument("--input", required=True, help="constituent CSV")
    cp.add_argument(
        "--methods",
        required=True,
        help=(
            "comma-separated rules, e.g. "
            "'power:p=0.5,linpower:p=0.5:knot=0.01,cap'"
        ),
    )
    return parser


def _rule_from_flags(args: argparse.Namespace) -> RebalanceRule:
    try:
        if args.method == "power":
            if args.p is None:
                raise _UsageError("error: --method power requires --p")
            return PowerRule(args.p)
        if args.method == "linpower":
            if args.p is None:
                raise _UsageError("error: --method linpower requires --p")
            return LinearizedPowerRule(args.p, args.knot)
        return CapRule(args.threshold, args.target_aggregate)
    except ValueError as exc:
        raise _UsageError(f"error: {exc}") from exc


def _rule_params(rule: RebalanceRule) -> dict[str, float]:
    if isinstance(rule, PowerRule):
        return {"p": rule.p}
    if isinstance(rule, LinearizedPowerRule):
        return {"p": rule.p, "knot": rule.knot}
    return {"threshold": rule.threshold, "target_aggregate": rule.target_aggregate}


def parse_methods_spec(spec: str) -> list[tuple[str, RebalanceRule]]:
    """Parse 'method[:key=value...]' entries separated by commas."""
    rules: list[tuple[str, RebalanceRule]] = []
    for entry in spec.split(","):
        entry = entry.strip()
        if not entry:
            continue
        parts = entry.split(":")
        method = parts[0].strip()
        kv: dict[str, float] = {}
        for part in parts[1:]:
            if "=" not in part:
                raise _UsageError(
                    f"error: malformed method parameter {part!r} in {entry!r}"
                )
            key, _, raw = part.partition("=")
            try:
                kv[key.strip()] = float(raw)
            except ValueError:
                raise _UsageError(
                    f"error: {raw!r} is not a number in {entry!r}"
                ) from None
        try:
            if method == "power":
                if "p" not in kv:
                    raise _UsageError(f"error: {entry!r} needs p=")
                rules.append((entry, PowerRule(kv["p"])))
            elif method == "linpower":
                if "p" not in kv:
                    raise _UsageError(f"error: {entry!r} needs p=")
                rules.append(
                    (entry, LinearizedPowerRule(kv["p"], kv.get("knot", 0.01)))
                )
            elif method == "cap":
                rules.append(
                    (
                        entry,
                        CapRule(
                            kv.get("threshold", 0.045),
                            kv.get("target", kv.get("target_aggregate", 0.40)),
                        ),
                    )
                )
            else:
                raise _UsageError(f"error: unknown method {method!r}")
        except ValueError as exc:
            raise _UsageError(f"error: {entry!r}: {exc}") from exc
    if not rules:
        raise _UsageError("error: --methods names no rules")
    return rules


def _cmd_rebalance(args: argparse.Namespace) -> int:
    rule = _rule_from_flags(args)
    mu = weights_from_market_caps(parse_universe(args.input))
    eta = apply_rule(mu, rule)
    report = diagnostics_report(mu, eta)
    payload = report_payload(args.method, _rule_params(rule), mu, eta, report)
    write_report(args.output, payload, args.format)
    return EXIT_OK


def _cmd_solve(args: argparse.Namespace) -> int:
    try:
        if args.target == "max":
            target = CalibrationTarget("max_weight", args.bound)
        else:
            if args.k is None:
                raise _UsageError("error: --target top-k requires --k")
            target = CalibrationTarget("top_k_sum", args.bound, k=args.k)
        if not args.tol > 0:
            raise ValueError(f"tol must be positive, got {args.tol!r}")
    except ValueError as exc:
        raise _UsageError(f"error: {exc}") from exc
    mu = weights_from_market_caps(parse_universe(args.input))
    result = solve_exponent(mu, target, args.tol)
    print(
        f"p_star={_g(result.p_star)} achieved={_g(result.achieved)} "
        f"converged={'true' if result.converged else 'false'} "
        f"iterations={result.iterations}"
    )
    return EXIT_OK if result.converged else EXIT_INPUT


def _print_report(report: DiagnosticsReport) -> None:
    print(f"turnover={_g(report.turnover)}")
    print(
        f"max_before={_g(report.max_before)} max_after={_g(report.max_after)} "
        f"max_increased={'true' if report.max_increased else 'false'}"
    )
    print(f"order_violations={len(report.order_violations)}")
    for violation in report.order_violations[:MAX_VIOLATIONS_LISTED]:
        print(
            f"  {violation.identifier_low} "
            f"({_g(violation.mu_low)} -> {_g(violation.eta_low)}) "
            f"now above {violation.identifier_high} "
            f"({_g(violation.mu_high)} -> {_g(violation.eta_high)})"
        )
    hidden = len(report.order_violations) - MAX_VIOLATIONS_LISTED
    if hidden > 0:
        print(f"  ... {hidden} more")
    print(f"hhi_before={_g(report.hhi_before)} hhi_after={_g(report.hhi_after)}")
    for k, (before, after) in sorted(report.top_k_sums.items()):
        print(f"top{k}_before={_g(before)} top{k}_after={_g(after)}")
    print(
        f"diversity_before={_g(report.diversity_before)} "
        f"diversity_after={_g(report.diversity_after)}"
    )


def _cmd_diagnose(args: argparse.Namespace) -> int:
    before = read_weight_file(args.before)
    after = read_weight_file(args.after)
    report = diagnostics_report(before, after)
    _print_report(report)
    return EXIT_PATHOLOGY if report.has_pathology else EXIT_OK


def _cmd_compare(args: argparse.Namespace) -> int:
    labeled = parse_methods_spec(args.methods)
    mu = weights_from_market_caps(parse_universe(args.input))
    results = compare_methods(mu, [rule for _, rule in labeled])
    header = (
        f"{'method':<32} {'turnover':>10} {'max_after':>10} "
        f"{'violations':>10} {'hhi_after':>10} {'diversity':>10}"
    )
    print(header)
    for (label, _), (_, report) in zip(labeled, results):
        print(
            f"{label:<32} {_g(report.turnover):>10} {_g(report.max_after):>10} "
            f"{len(report.order_violations):>10} {_g(report.hhi_after):>10} "
            f"{_g(report.diversity_after):>10}"
        )
    return EXIT_OK


_COMMANDS = {
    "rebalance": _cmd_rebalance,
    "solve": _cmd_solve,
    "diagnose": _cmd_diagnose,
    "compare": _cmd_compare,
}


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run one subcommand, return the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except RebalanceError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
