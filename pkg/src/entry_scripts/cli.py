"""
Command-line entry point

    bellbox simulate --state bell --rule power:m=4 --observables chsh --out box.json
    bellbox check --box box.json
    bellbox sweep --m-start 0.1 --m-end 20 --steps 200 --out sweep.csv --svg sweep.svg
    bellbox born-verify --grid 100 --rules born,power:m=4,step --out grid.csv
    bellbox solve --grid 64 --out rule.csv
    bellbox search --state bell --rule power:m=6 --restarts 16 --seed 7 --out search.json
"""
import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional
from src.config.constants import MeasurementOrder, ExitCode
from src.config.settings import get_settings
from src.domain.entities.box import Box
from src.application.services.box_zoo import pr_box, anti_pr_box, mixed_order_device
from src.application.services.box_analysis_service import causality_report, chsh_value, classify_chsh
from src.application.services.measurement_service import assemble_box
from src.application.services.uniqueness_service import residual_grid, solve_rule
from src.application.services.experiment_service import (
    chsh_sweep,
    emit_sweep_csv,
    emit_sweep_svg,
    nco_observable_search
)
from src.adapters.files.box_file import dump_box, load_box
from src.adapters.files.csv_export import write_grid_csv, write_solution_csv
from src.domain.value_objects.probability_rule import ProbabilityRule
from src.error_trace.exceptions import (
    BellBoxException,
    AllZeroStateError,
    BoxFormatError,
    ValidationError
)
from src.utilities.helpers import parse_state_spec, parse_observables_spec, parse_rule_list
from src.utilities.logger import get_logger, setup_logging

logger = get_logger(__name__)
settings = get_settings()

BUILTIN_BOXES: Dict[str, Callable[[], Box]] = {
    "pr": pr_box,
    "anti-pr": anti_pr_box,
    "mixed-order": mixed_order_device
}

INPUT_ERRORS = (AllZeroStateError, BoxFormatError, ValidationError)


def _emit_json(document: dict, out: Optional[str] = None) -> None:
    text = json.dumps(document, indent=2)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    print(text)


def cmd_simulate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    """Assemble a box and write it as a box file"""
    try:
        rule = ProbabilityRule.from_string(args.rule)
        alice, bob = parse_observables_spec(args.observables)
        state = parse_state_spec(args.state)
    except ValidationError as e:
        parser.error(e.message)

    box = assemble_box(state, alice, bob, rule)
    dump_box(box, args.out)
    _emit_json({
        "out": str(args.out),
        "chsh": {order.value: chsh_value(box, order) for order in MeasurementOrder}
    })
    return ExitCode.OK


def cmd_check(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    """Run the causality checks and print the report"""
    factory = BUILTIN_BOXES.get(args.box)
    box = factory() if factory else load_box(args.box)

    report = causality_report(box, args.tol)
    chsh = {order.value: chsh_value(box, order) for order in MeasurementOrder}
    document = report.to_dict()
    document["chsh"] = chsh
    document["regime"] = {order: classify_chsh(value).value for order, value in chsh.items()}
    document["provenance"] = box.provenance
    _emit_json(document)
    return ExitCode.OK if report.all_passed else ExitCode.CHECK_FAILED


def cmd_sweep(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    """CHSH against the exponent, to CSV and optionally SVG"""
    if args.steps < 2:
        parser.error("--steps must be at least 2")
    if not 0 < args.m_start < args.m_end:
        parser.error("need 0 < --m-start < --m-end")

    rows = chsh_sweep(args.m_start, args.m_end, args.steps)
    emit_sweep_csv(rows, args.out)
    if args.svg:
        emit_sweep_svg(rows, args.svg)
    return ExitCode.OK


def cmd_born_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    """Functional-equation residual scan per rule"""
    if args.grid < 2:
        parser.error("--grid must be at least 2")
    try:
        rules = parse_rule_list(args.rules)
    except ValidationError as e:
        parser.error(e.message)

    scans = {}
    for rule in rules:
        scan = residual_grid(rule, args.grid)
        scans[rule.name] = scan
        print(f"{rule.name}\t{scan.max_residual:.6e}\t({scan.argmax.q1:g}, {scan.argmax.q2:g})")
    if args.out:
        write_grid_csv(scans, args.out)
    return ExitCode.OK


def cmd_solve(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    """Reconstruct the rule on a grid from the functional equation"""
    if args.grid < 4:
        parser.error("--grid must be at least 4")
    solution = solve_rule(args.grid)
    if args.out:
        write_solution_csv(solution, args.out)
    _emit_json({
        "grid": args.grid,
        "sup_distance": solution.sup_distance,
        "residual_norm": solution.residual_norm,
        "iterations": solution.iterations
    })
    return ExitCode.OK


def cmd_search(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    """Search observables keeping a state's box order independent"""
    if args.restarts < 1:
        parser.error("--restarts must be positive")
    if args.seed < 0:
        parser.error("--seed must be non-negative")
    try:
        rule = ProbabilityRule.from_string(args.rule)
        state = parse_state_spec(args.state)
    except ValidationError as e:
        parser.error(e.message)

    result = nco_observable_search(state, rule, args.restarts, args.seed)
    document = {"rule": rule.name, "state": state.to_list(), **result.to_dict()}
    _emit_json(document, args.out)
    return ExitCode.OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellbox",
        description="Order-sensitive simulation and causality analysis of two-qubit nonlocal boxes"
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ...")
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="assemble a box and write it as JSON")
    simulate.add_argument("--state", default="bell", help="bell | product | a1,a2,a3,a4 as re:im")
    simulate.add_argument("--rule", default="born", help="born | power:m=<real> | step")
    simulate.add_argument("--observables", default="chsh", help="chsh | 8 comma-separated angles")
    simulate.add_argument("--out", required=True, help="box file to write")
    simulate.set_defaults(handler=cmd_simulate)

    check = commands.add_parser("check", help="causality report for a box")
    check.add_argument("--box", required=True, help="pr | anti-pr | mixed-order | <path>")
    check.add_argument("--tol", type=float, default=settings.report_tolerance)
    check.set_defaults(handler=cmd_check)

    sweep = commands.add_parser("sweep", help="CHSH value of the Bell state against m")
    sweep.add_argument("--m-start", type=float, required=True)
    sweep.add_argument("--m-end", type=float, required=True)
    sweep.add_argument("--steps", type=int, required=True)
    sweep.add_argument("--out", required=True, help="CSV file to write")
    sweep.add_argument("--svg", default=None, help="optional SVG chart")
    sweep.set_defaults(handler=cmd_sweep)

    verify = commands.add_parser("born-verify", help="functional-equation residual per rule")
    verify.add_argument("--grid", type=int, default=settings.default_grid)
    verify.add_argument("--rules", default="born", help="comma-separated rule specs")
    verify.add_argument("--out", default=None, help="optional CSV of all grid residuals")
    verify.set_defaults(handler=cmd_born_verify)

    solve = commands.add_parser("solve", help="reconstruct H on a grid")
    solve.add_argument("--grid", type=int, default=64)
    solve.add_argument("--out", default=None, help="optional CSV of (p, H)")
    solve.set_defaults(handler=cmd_solve)

    search = commands.add_parser("search", help="observables preserving order independence")
    search.add_argument("--state", required=True, help="bell | product | a1,a2,a3,a4 as re:im")
    search.add_argument("--rule", required=True, help="born | power:m=<real> | step")
    search.add_argument("--restarts", type=int, default=16)
    search.add_argument("--seed", type=int, default=0)
    search.add_argument("--out", default=None, help="optional JSON result file")
    search.set_defaults(handler=cmd_search)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse flags, run one command and return its exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(log_level=args.log_level)

    logger.info(f"bellbox {args.command}")
    try:
        return int(args.handler(args, parser))
    except INPUT_ERRORS as e:
        print(json.dumps(e.to_dict()), file=sys.stderr)
        return ExitCode.INPUT_ERROR
    except BellBoxException as e:
        print(json.dumps(e.to_dict()), file=sys.stderr)
        return ExitCode.DOMAIN_ERROR
    except OSError as e:
        logger.error(f"I/O error: {e}")
        print(str(e), file=sys.stderr)
        return ExitCode.INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
