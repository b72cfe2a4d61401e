"""Command-line interface.

Exit codes: 0 success, 2 validation failure, 3 I/O failure, 4 refusal (for
example the exhaustive-search cap). ``--format=tree`` emits the same JSON
payloads the HTTP API serves.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import demo, render
from .evaluator import compare, evaluate
from .fileio import (
    ScenarioDocument,
    ScenarioParseError,
    comparison_to_tree,
    distribution_to_tree,
    evaluation_to_tree,
    parse_document,
    search_result_to_tree,
    serialize_document,
)
from .impact import DETERMINISTIC, EvaluationError, sampled
from .model import Assignment, AssignmentError, scenario_warnings, validate_scenario
from .optimizer import CapExceededError, SearchConfig, brute_force, hill_climb
from .risk import monte_carlo

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_REFUSED = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_document(path: str) -> ScenarioDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc
    try:
        return parse_document(text)
    except ScenarioParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_VALIDATION) from exc


def _parse_assign(text: str) -> Assignment:
    mapping = {}
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise CliError(f"--assign expects task=site pairs, got {piece!r}", EXIT_VALIDATION)
        task, site = piece.split("=", 1)
        mapping[task.strip()] = site.strip()
    return Assignment(mapping)


def _pick_assignment(args, document: ScenarioDocument) -> Assignment:
    if getattr(args, "assign", None):
        return _parse_assign(args.assign)
    label = getattr(args, "alt", None)
    if label:
        if label not in document.alternatives:
            known = ", ".join(sorted(document.alternatives)) or "none"
            raise CliError(f"unknown alternative {label!r} (stored: {known})", EXIT_VALIDATION)
        return document.alternatives[label]
    raise CliError("provide --assign task=site,... or --alt <label>", EXIT_VALIDATION)


def _mode_from(args):
    if args.mode == "sampled":
        return sampled(args.seed)
    return DETERMINISTIC


def _emit(args, tree: dict, text: str) -> None:
    if args.format == "tree":
        print(json.dumps(tree, indent=2, ensure_ascii=False))
    else:
        print(text, end="")


def run_init(args) -> int:
    path = Path(args.path)
    if path.exists() and not args.force:
        raise CliError(f"{path} already exists (use --force to overwrite)", EXIT_IO)
    document = ScenarioDocument(scenario=demo.demo_scenario(), alternatives=demo.demo_alternatives())
    try:
        path.write_text(serialize_document(document), encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from exc
    print(f"wrote demo scenario to {path}")
    return EXIT_OK


def run_validate(args) -> int:
    try:
        text = Path(args.scenario).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {args.scenario}: {exc}", EXIT_IO) from exc
    try:
        document = parse_document(text)
    except ScenarioParseError as exc:
        violations = [{"code": v.code, "message": v.message, "path": v.path} for v in exc.violations]
        _emit(
            args,
            {"valid": False, "violations": violations},
            "".join(f"  [{v['code']}] at {v['path']}: {v['message']}\n" for v in violations)
            or f"{exc}\n",
        )
        return EXIT_VALIDATION
    violations = validate_scenario(document.scenario)
    warnings = scenario_warnings(document.scenario)
    tree = {
        "valid": not violations,
        "violations": [{"code": v.code, "message": v.message, "path": v.path} for v in violations],
        "warnings": [{"code": w.code, "message": w.message, "path": w.path} for w in warnings],
    }
    _emit(args, tree, render.render_violations(violations, warnings))
    return EXIT_OK if not violations else EXIT_VALIDATION


def run_evaluate(args) -> int:
    document = _load_document(args.scenario)
    assignment = _pick_assignment(args, document)
    try:
        result = evaluate(document.scenario, assignment, _mode_from(args))
    except (AssignmentError, EvaluationError) as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from exc
    _emit(args, evaluation_to_tree(result), render.render_evaluation(result, document.scenario))
    return EXIT_OK


def run_compare(args) -> int:
    document = _load_document(args.scenario)
    if args.alts:
        labels = [label.strip() for label in args.alts.split(",") if label.strip()]
    else:
        labels = list(document.alternatives)
    if not labels:
        raise CliError("no alternatives given and none stored in the scenario file", EXIT_VALIDATION)
    missing = [label for label in labels if label not in document.alternatives]
    if missing:
        raise CliError(f"unknown alternative label(s): {', '.join(missing)}", EXIT_VALIDATION)
    try:
        report = compare(document.scenario, [(label, document.alternatives[label]) for label in labels])
    except (AssignmentError, EvaluationError, ValueError) as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from exc
    _emit(args, comparison_to_tree(report), render.render_comparison(report, document.scenario))
    return EXIT_OK


def run_optimize(args) -> int:
    document = _load_document(args.scenario)
    scenario = document.scenario
    try:
        if args.exhaustive:
            result = brute_force(scenario, cap=args.cap)
        elif args.restarts is not None:
            config = SearchConfig(
                restarts=args.restarts, seed=args.seed, max_no_improve=args.max_no_improve
            )
            result = hill_climb(scenario, config)
        else:
            # No explicit strategy: enumerate when feasible, otherwise climb.
            try:
                result = brute_force(scenario, cap=args.cap)
            except CapExceededError:
                result = hill_climb(scenario, SearchConfig(seed=args.seed, max_no_improve=args.max_no_improve))
    except CapExceededError as exc:
        raise CliError(str(exc), EXIT_REFUSED) from exc
    except (AssignmentError, EvaluationError) as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from exc
    _emit(args, search_result_to_tree(result), render.render_search_result(result, scenario))
    return EXIT_OK


def run_risk(args) -> int:
    document = _load_document(args.scenario)
    assignment = _pick_assignment(args, document)
    try:
        dist = monte_carlo(document.scenario, assignment, args.n, args.seed)
    except (AssignmentError, EvaluationError, ValueError) as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from exc
    percentiles = tuple(args.percentile) if args.percentile else (0.1, 0.5, 0.9)
    _emit(
        args,
        distribution_to_tree(dist, budget=args.budget, percentiles=percentiles),
        render.render_distribution(dist, budget=args.budget, percentiles=percentiles),
    )
    return EXIT_OK


def run_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(
        create_app(snapshot_path=args.snapshot), host=args.host, port=args.port, log_level="info"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "tree"), default="text", help="output format")
    common.add_argument(
        "--mode", choices=("deterministic", "sampled"), default="deterministic", help="evaluation mode"
    )
    common.add_argument("--seed", type=int, default=0, help="seed for sampled mode / search")

    parser = argparse.ArgumentParser(
        prog="gsdalloc", description="Task-allocation evaluation for distributed development"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", parents=[common], help="write the bundled demo scenario file")
    p.add_argument("path")
    p.add_argument("--force", action="store_true", help="overwrite an existing file")
    p.set_defaults(func=run_init)

    p = sub.add_parser("validate", parents=[common], help="validate a scenario file")
    p.add_argument("scenario")
    p.set_defaults(func=run_validate)

    p = sub.add_parser("evaluate", parents=[common], help="evaluate one assignment")
    p.add_argument("scenario")
    p.add_argument("--assign", help="comma-separated task=site pairs")
    p.add_argument("--alt", help="label of an alternative stored in the file")
    p.set_defaults(func=run_evaluate)

    p = sub.add_parser("compare", parents=[common], help="compare stored alternatives")
    p.add_argument("scenario")
    p.add_argument("--alts", help="comma-separated labels (default: all stored)")
    p.set_defaults(func=run_compare)

    p = sub.add_parser("optimize", parents=[common], help="search for the best assignment")
    p.add_argument("scenario")
    p.add_argument("--exhaustive", action="store_true", help="force exhaustive enumeration")
    p.add_argument("--restarts", type=int, help="hill-climb with this many restarts")
    p.add_argument("--max-no-improve", type=int, default=1000, help="move cap per restart")
    p.add_argument("--cap", type=int, default=10_000_000, help="enumeration cap")
    p.set_defaults(func=run_optimize)

    p = sub.add_parser("risk", parents=[common], help="Monte Carlo cost/effort distribution")
    p.add_argument("scenario")
    p.add_argument("--assign", help="comma-separated task=site pairs")
    p.add_argument("--alt", help="label of an alternative stored in the file")
    p.add_argument("-n", type=int, default=10000, help="sample count")
    p.add_argument("--budget", type=float, help="report P(cost > budget)")
    p.add_argument("--percentile", type=float, action="append", help="extra percentile in [0,1]")
    p.set_defaults(func=run_risk)

    p = sub.add_parser("serve", parents=[common], help="start the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--snapshot", help="write all sessions to this file on shutdown")
    p.set_defaults(func=run_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
