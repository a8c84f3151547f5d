"""Command line interface.

Subcommands: measure, sweep, baseline, oracle-check, experiment. Input
is a file path or the name of a bundled dataset; output goes to stdout
or --output. Exit codes: 0 success, 2 unreadable or malformed input,
3 invalid parameters or grid, 4 input outside a baseline's scope,
5 oracle mismatch, 6 enumeration size guard.
"""
from __future__ import annotations

import argparse
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

from . import baselines, io, measures, oracle
from .graph import Deviation, MeasureParams
from .model import ValidationError

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PARAMS = 3
EXIT_UNSUPPORTED = 4
EXIT_MISMATCH = 5
EXIT_SIZE = 6

EXPERIMENT_GRID = "1:0.45:0.05"


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_document(source: str) -> io.RankingDocument:
    """Resolve a positional input: bundled dataset name, else file path."""
    normalized = source.lower().replace("-", "_")
    try:
        dataset = io.Dataset(normalized)
    except ValueError:
        dataset = None
    if dataset is not None:
        return io.load_dataset(dataset)
    content = Path(source).read_text(encoding="utf-8")
    if content.lstrip().startswith("{"):
        return io.parse_json(content, source=source)
    return io.parse_text(content, source=source)


def _default_format(chosen: str | None) -> str:
    if chosen:
        return chosen
    return "table" if sys.stdout.isatty() else "csv"


def _params_from(args: argparse.Namespace) -> MeasureParams:
    return MeasureParams(
        gamma=args.gamma,
        lam=args.lam,
        epsilon=args.epsilon,
        deviation=Deviation(args.deviation),
        zeta=getattr(args, "topk_zeta", None),
        beta=getattr(args, "topk_beta", None),
    )


def parse_grid(text: str) -> list[float]:
    """Expand "start:stop:step" into an inclusive grid; both directions work.

    A zero step is only allowed for the single-point case start == stop.
    Decimal arithmetic keeps the values exact, so 1:0.45:0.05 yields the
    twelve conventional points without drift.
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (Decimal(part) for part in parts)
    except InvalidOperation:
        raise ValueError(f"grid must be numeric, got {text!r}") from None
    if step < 0:
        raise ValueError("grid step must be non-negative")
    if step == 0:
        if start != stop:
            raise ValueError("grid step 0 requires start == stop")
        values = [start]
    else:
        values = []
        if start >= stop:
            current = start
            while current >= stop:
                values.append(current)
                current -= step
        else:
            current = start
            while current <= stop:
                values.append(current)
                current += step
    grid = [float(value) for value in values]
    for value in grid:
        if not 0.0 < value <= 1.0:
            raise ValueError(f"grid value out of range (0,1]: {value}")
    return grid


def _add_input(parser: argparse.ArgumentParser) -> None:
    datasets = ", ".join(d.value for d in io.Dataset)
    parser.add_argument(
        "input",
        help=f"ranking file (text or JSON) or bundled dataset name ({datasets})",
    )


def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--gamma", type=float, default=1.0, help="item weight base in (0,1]")
    parser.add_argument(
        "--lambda", dest="lam", type=float, default=1.0, help="pair weight base in (0,1]"
    )
    parser.add_argument(
        "--epsilon", type=float, default=1e-12, help="series termination threshold"
    )
    parser.add_argument(
        "--deviation",
        choices=[d.value for d in Deviation],
        default=Deviation.MAD.value,
        help="position deviation statistic (std reproduces the bundled reference tables)",
    )


def _add_output(parser: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
    parser.add_argument("--format", choices=formats, default=None)
    parser.add_argument("--output", metavar="PATH", help="write results to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankconsensus",
        description="Set-wise consensus measures of rankings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="kappa series, ell and total for one set")
    _add_input(p)
    _add_params(p)
    p.add_argument("--dedup", action="store_true", help="add the duplicate-adjusted total")
    p.add_argument("--topk-zeta", type=float, default=None, help="top-k position cutoff")
    p.add_argument("--topk-beta", type=float, default=None, help="top-k weight base in (0,1)")
    _add_output(p, ("json", "csv", "table"))

    p = sub.add_parser("sweep", help="evaluate a gamma/lambda grid")
    _add_input(p)
    _add_params(p)
    p.add_argument("--gamma-grid", default=EXPERIMENT_GRID, help="start:stop:step")
    p.add_argument("--lambda-grid", default=EXPERIMENT_GRID, help="start:stop:step")
    p.add_argument(
        "--per-p",
        default=None,
        metavar="P1,P2,...",
        help="also emit kappa_p columns (csv format only)",
    )
    _add_output(p, ("json", "csv", "table"))

    p = sub.add_parser("baseline", help="pairwise correlation indices and aggregate")
    _add_input(p)
    p.add_argument(
        "--index",
        required=True,
        choices=[b.value for b in baselines.Baseline],
        help="tau, dtau, rho or footrule",
    )
    p.add_argument(
        "--mode",
        choices=[m.value for m in baselines.Aggregate],
        default=baselines.Aggregate.MEAN.value,
    )
    _add_output(p, ("json", "csv", "table"))

    p = sub.add_parser("oracle-check", help="compare matrix path against enumeration")
    _add_input(p)
    _add_params(p)

    p = sub.add_parser("experiment", help="reproduce the bundled reference sweeps")
    p.add_argument("name", choices=["clustering", "search"])
    p.add_argument("--output", metavar="PATH", help="write the report to a file")

    return parser


def _parse_per_p(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"per-p must be a comma list of integers, got {text!r}") from None
    if not values or any(p < 1 for p in values):
        raise ValueError("per-p values must be positive integers")
    return values


def cmd_measure(args: argparse.Namespace) -> int:
    if (args.topk_zeta is None) != (args.topk_beta is None):
        return _fail(EXIT_PARAMS, "top-k weighting requires both --topk-zeta and --topk-beta")
    try:
        params = _params_from(args)
    except ValueError as exc:
        return _fail(EXIT_PARAMS, str(exc))
    try:
        document = _load_document(args.input)
        rset = document.to_ranking_set()
    except (io.ParseError, ValidationError, OSError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    profile = measures.measure(rset, params)
    extras: dict[str, object] = {}
    if args.dedup:
        extras["kappa_dup"] = measures.kappa_dup(rset, params)
    if params.zeta is not None:
        extras["kappa_1_topk"] = measures.kappa1_topk(rset, params)
    text = io.write_results(
        profile, _default_format(args.format), params=params, extras=extras or None
    )
    _emit(text, args.output)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        params = _params_from(args)
        gammas = parse_grid(args.gamma_grid)
        lams = parse_grid(args.lambda_grid)
        per_p = _parse_per_p(args.per_p) if args.per_p else None
    except ValueError as exc:
        return _fail(EXIT_PARAMS, str(exc))
    fmt = _default_format(args.format)
    if per_p and fmt != "csv":
        return _fail(EXIT_PARAMS, "per-p columns are only available with --format csv")
    try:
        document = _load_document(args.input)
        rset = document.to_ranking_set()
    except (io.ParseError, ValidationError, OSError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    points = measures.kappa_sweep(rset, gammas, lams, params)
    _emit(io.write_results(points, fmt, per_p=per_p), args.output)
    return EXIT_OK


def cmd_baseline(args: argparse.Namespace) -> int:
    try:
        document = _load_document(args.input)
        rset = document.to_ranking_set()
    except (io.ParseError, ValidationError, OSError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    labels = document.labels()
    try:
        aggregate = baselines.pairwise_aggregate(rset, args.index, args.mode)
        pairs = []
        for i in range(len(rset)):
            for j in range(len(rset)):
                if i != j:
                    value = baselines.pairwise_index(
                        rset.rankings[i], rset.rankings[j], args.index
                    )
                    pairs.append((labels[i], labels[j], value))
    except ValueError as exc:
        return _fail(EXIT_UNSUPPORTED, str(exc))
    fmt = _default_format(args.format)
    lines: list[str]
    if fmt == "json":
        import json as _json

        payload = {
            "index": args.index,
            "mode": args.mode,
            "pairs": [[a, b, v] for a, b, v in pairs],
            "aggregate": aggregate,
        }
        text = _json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        lines = ["first,second,value"]
        lines += [f"{a},{b},{v!r}" for a, b, v in pairs]
        lines.append(f"aggregate,{args.mode},{aggregate!r}")
        text = "\n".join(lines) + "\n"
    else:
        value_by_pair = {(a, b): v for a, b, v in pairs}
        width = max(len(label) for label in labels + ["-"])
        cells = [["-".rjust(width)] + [label.rjust(width) for label in labels]]
        for a in labels:
            row = [a.rjust(width)]
            for b in labels:
                row.append(
                    ("." if a == b else io.round3(value_by_pair[(a, b)])).rjust(width)
                )
            cells.append(row)
        lines = ["  ".join(row) for row in cells]
        lines.append(f"aggregate ({args.mode}): {io.round3(aggregate)}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def _profiles_match(
    a: measures.KappaProfile, b: measures.KappaProfile, exact: bool
) -> bool:
    if exact:
        return a.series == b.series
    ell = max(a.ell, b.ell)
    for p in range(1, ell + 1):
        va, vb = a.value_at(p), b.value_at(p)
        if abs(va - vb) > 1e-9 * max(1.0, abs(va), abs(vb)):
            return False
    return True


def cmd_oracle_check(args: argparse.Namespace) -> int:
    try:
        params = _params_from(args)
    except ValueError as exc:
        return _fail(EXIT_PARAMS, str(exc))
    try:
        document = _load_document(args.input)
        rset = document.to_ranking_set()
    except (io.ParseError, ValidationError, OSError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    try:
        reference = oracle.oracle_profile(rset, params)
    except oracle.SizeLimitError as exc:
        return _fail(EXIT_SIZE, str(exc))
    computed = measures.measure(rset, params)
    if _profiles_match(computed, reference, params.exact):
        print(f"oracle check passed: ell={computed.ell} kappa={computed.total}")
        return EXIT_OK
    print("oracle check FAILED", file=sys.stderr)
    print("p matrix oracle", file=sys.stderr)
    for p in range(1, max(computed.ell, reference.ell) + 1):
        print(f"{p} {computed.value_at(p)} {reference.value_at(p)}", file=sys.stderr)
    return EXIT_MISMATCH


def _experiment_report(name: str) -> str:
    if name == "clustering":
        jobs = [("CE", io.Dataset.CLUSTERING_CE, "ce"), ("GA", io.Dataset.CLUSTERING_GA, "ga")]
    else:
        jobs = [
            ("Google", io.Dataset.SEARCH_GOOGLE, "google"),
            ("Bing", io.Dataset.SEARCH_BING, "bing"),
        ]
    grid = parse_grid(EXPERIMENT_GRID)
    contract_variants = (Deviation.MAD, Deviation.SQRT_MAD)
    lines: list[str] = []
    for title, dataset, table in jobs:
        rset = io.load_dataset(dataset).to_ranking_set()
        gammas, lams, reference = io.load_reference_sweep(table)
        assert gammas == grid and lams == grid
        lines.append(f"== {title} ==")
        max_dev: dict[Deviation, float] = {}
        for variant in Deviation:
            params = MeasureParams(deviation=variant)
            points = measures.kappa_sweep(rset, gammas, lams, params)
            lines.append(f"kappa table (deviation={variant.value}):")
            lines.append(io.sweep_table(points).rstrip("\n"))
            worst = 0.0
            diff_rows = []
            for gi, gamma in enumerate(gammas):
                row = []
                for li, lam in enumerate(lams):
                    point = points[gi * len(lams) + li]
                    diff = float(point.profile.total) - reference[gi][li]
                    worst = max(worst, abs(diff))
                    row.append(f"{diff:+.4f}")
                diff_rows.append(" ".join(row))
            max_dev[variant] = worst
            lines.append(f"deviation from reference (computed - reference, {variant.value}):")
            lines.extend(diff_rows)
            lines.append(f"max abs deviation ({variant.value}): {worst:.4f}")
        best = min(contract_variants, key=lambda v: max_dev[v])
        lines.append(f"best variant: {best.value}")
        within = [v.value for v in Deviation if max_dev[v] <= 0.001]
        lines.append(
            "reproduces reference within 0.001: " + (", ".join(within) if within else "none")
        )
        if name == "search":
            exact = measures.measure(rset, MeasureParams())
            lines.append(f"kappa_1 at gamma=1: {exact.value_at(1)}")
        lines.append("")
    return "\n".join(lines)


def cmd_experiment(args: argparse.Namespace) -> int:
    _emit(_experiment_report(args.name), args.output)
    return EXIT_OK


_HANDLERS = {
    "measure": cmd_measure,
    "sweep": cmd_sweep,
    "baseline": cmd_baseline,
    "oracle-check": cmd_oracle_check,
    "experiment": cmd_experiment,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return _HANDLERS[args.command](args)


if __name__ == "__main__":
    raise SystemExit(main())
