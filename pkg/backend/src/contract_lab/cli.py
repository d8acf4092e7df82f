"""
Command-line entry point: `python -m contract_lab <subcommand> ...`.

Exit codes: 0 success, 2 parse or validation failure, 3 solver failure,
4 factorial run with failed cells.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from . import get_settings
from .core.models import LumpSumPenaltyTerms, RenewalTerms, UnitPenaltyTerms, WholesaleTerms
from .errors import ClosedFormUnavailable, ContractLabError, SolverError
from .experiments import (
    Directive,
    ExperimentGrid,
    ResultsWriter,
    Scenario,
    check_scenario,
    emit_figure_data,
    figure_ids,
    load_grid,
    load_scenario,
    render_summary,
    run_factorial,
    run_scenario,
)
from .simulation import SimConfig

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_SOLVER = 3
EXIT_PARTIAL = 4


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="[%(levelname)s] [%(name)s] %(message)s",
        stream=sys.stderr,
    )


def exit_code_for(exc: ContractLabError) -> int:
    if isinstance(exc, (SolverError, ClosedFormUnavailable)):
        return EXIT_SOLVER
    return EXIT_INVALID


def _first_error(exc: ValidationError) -> str:
    error = exc.errors()[0]
    where = ".".join(str(part) for part in error["loc"])
    return f"{where}: {error['msg']}" if where else error["msg"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="contract_lab", description="Supply-chain contract analytics")
    parser.add_argument("--out", type=Path, default=None, help="CSV output path")
    parser.add_argument("--seed", type=int, default=None, help="Simulation seed (overrides scenario and env)")
    parser.add_argument("--strict", action="store_true", help="Treat assumption warnings as fatal")
    parser.add_argument("--log-level", default=None, help="Logging level (default CONTRACTLAB_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="Parse and validate a scenario")
    check.add_argument("scenario", type=Path)

    single = sub.add_parser("single", help="Wholesale contract for one generation")
    single.add_argument("scenario", type=Path)

    penalty = sub.add_parser("penalty", help="Coordinating penalty contract")
    penalty.add_argument("scenario", type=Path)
    penalty.add_argument("--kind", choices=["lump_sum", "unit_penalty"], default=None)

    renewal = sub.add_parser("renewal", help="Contingent renewal over generations")
    renewal.add_argument("scenario", type=Path)
    renewal.add_argument("--optimize", action="store_true", help="OEM-optimal price instead of w^delta")

    factorial = sub.add_parser("factorial", help="Full-factorial optimal vs coordinating comparison")
    factorial.add_argument("--grid", type=Path, default=None, help="Grid file (default: the 54-cell design)")
    factorial.add_argument("--threads", type=int, default=None)

    figure = sub.add_parser("figure", help="Emit figure data as CSV")
    figure.add_argument("figure_id", help=", ".join(figure_ids()))

    simulate = sub.add_parser("simulate", help="Evaluate a scenario and check it by Monte Carlo")
    simulate.add_argument("scenario", type=Path)
    simulate.add_argument("--replications", type=int, default=None)
    return parser


def _with_contract(scenario: Scenario, command: str, args: argparse.Namespace) -> Scenario:
    contract = scenario.contract
    directive = contract if isinstance(contract, Directive) else None
    if command == "single":
        if not isinstance(contract, WholesaleTerms):
            contract = Directive(kind="optimize", target="wholesale")
    elif command == "penalty":
        explicit = isinstance(contract, (LumpSumPenaltyTerms, UnitPenaltyTerms))
        if not explicit or (args.kind and args.kind != contract.kind):
            kind = args.kind
            if kind is None:
                kind = directive.target if directive and directive.target in ("lump_sum", "unit_penalty") else "lump_sum"
            contract = Directive(kind="coordinate", target=kind)
    elif command == "renewal":
        if not isinstance(contract, RenewalTerms) or args.optimize:
            optimize = args.optimize or (directive is not None and directive.kind == "optimize")
            contract = Directive(kind="optimize" if optimize else "coordinate", target="renewal")
    return scenario.model_copy(update={"contract": contract})


def _with_sim(scenario: Scenario, args: argparse.Namespace, force: bool) -> Scenario:
    sim = scenario.sim
    if sim is None and not force:
        return scenario
    updates = {}
    if args.seed is not None:
        updates["seed"] = args.seed
    if getattr(args, "replications", None) is not None:
        updates["replications"] = args.replications
    sim = SimConfig(**{**(sim.model_dump() if sim else {}), **updates})
    return scenario.model_copy(update={"sim": sim})


def _run_report(args: argparse.Namespace, writer_dir: Path) -> int:
    if args.command == "check":
        result = check_scenario(load_scenario(args.scenario), args.strict)
        for warning in result.warnings:
            print(f"warning: {warning}")
        print(f"status: {result.status}")
        return EXIT_OK

    def prepare(scenario: Scenario) -> Scenario:
        if args.command != "simulate":
            scenario = _with_contract(scenario, args.command, args)
        return _with_sim(scenario, args, force=args.command == "simulate")

    writer = ResultsWriter(writer_dir) if args.out is not None else None
    _, text = run_scenario(args.scenario, writer, args.out, args.strict, prepare=prepare)
    print(text, end="")
    return EXIT_OK


def _run_factorial(args: argparse.Namespace, writer: ResultsWriter) -> int:
    grid = load_grid(args.grid) if args.grid else ExperimentGrid.renewal_price_design()
    result = run_factorial(grid, threads=args.threads)
    rows_path = writer.resolve(args.out or "factorial.csv")
    writer.write_table(result.rows, rows_path)
    writer.write_table(result.summary, rows_path.with_name(rows_path.stem + "_summary.csv"))
    print(render_summary(result.summary))
    if result.partial:
        print(f"{result.failed} of {len(result.rows)} cells failed; see the error column")
        return EXIT_PARTIAL
    return EXIT_OK


def _run_figure(args: argparse.Namespace, writer: ResultsWriter) -> int:
    frame = emit_figure_data(args.figure_id)
    path = writer.write_table(frame, args.out or f"{args.figure_id}.csv")
    print(f"wrote {len(frame)} rows to {path}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    configure_logging(args.log_level or settings.log_level)
    try:
        if args.command == "factorial":
            return _run_factorial(args, ResultsWriter(settings.output_dir))
        if args.command == "figure":
            return _run_figure(args, ResultsWriter(settings.output_dir))
        return _run_report(args, settings.output_dir)
    except ValidationError as exc:
        LOGGER.error("invalid input: %s", exc)
        print(f"error: invalid input: {_first_error(exc)}", file=sys.stderr)
        return EXIT_INVALID
    except ContractLabError as exc:
        LOGGER.error("%s: %s", type(exc).__name__, exc)
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
