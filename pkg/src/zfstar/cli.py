"""
Command-Line Interface

One subcommand per workbench capability:

    parse     parse a formula, echo its canonical rendering and free variables
    eval      evaluate a formula in a model file under variable bindings
    check     check axioms against a model file
    find      search for the smallest model or countermodel, or count structures
    classify  Cantorian / classical / quantal verdict for a PT of a model
    coherent  coherent-state photon statistics, optionally exported as CSV
    bridge    render a Fock state as a model and classify its whole

Exit Codes:
    0   success or positive verdict
    1   negative verdict (false, axiom failure, nothing found, non-Cantorian, quantal)
    2   usage or input error

Every subcommand accepts --json, which prints the machine-readable payload
(keys sorted) instead of the text report. Both views carry the same verdict.
"""

import argparse
import json
import logging
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

try:
    from .config import Config
    from .finder import SearchError, SearchMode, SearchSpec, run_search
    from .fock import (
        FockError, FockState, coherent, distribution_csv, expected_number, is_number_eigenstate, mode_energy,
        number_distribution, number_state, number_variance, superpose, to_structure,
    )
    from .formula import FormulaError, expand_macros, free_vars, parse, parse_predicate, render, resolve_axioms, to_dict
    from .mereology import MereologyError, check_axioms, classify
    from .model import ModelError, load_file, save, save_file
    from .semantics import EvaluationError, evaluate
    from .structured_events import StructuredEventLogger, new_correlation_id
except ImportError:
    from config import Config
    from finder import SearchError, SearchMode, SearchSpec, run_search
    from fock import (
        FockError, FockState, coherent, distribution_csv, expected_number, is_number_eigenstate, mode_energy,
        number_distribution, number_state, number_variance, superpose, to_structure,
    )
    from formula import FormulaError, expand_macros, free_vars, parse, parse_predicate, render, resolve_axioms, to_dict
    from mereology import MereologyError, check_axioms, classify
    from model import ModelError, load_file, save, save_file
    from semantics import EvaluationError, evaluate
    from structured_events import StructuredEventLogger, new_correlation_id

logger = logging.getLogger(os.getenv("LOGGER_NAME", "ZFSTAR"))

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

INPUT_ERRORS = (FormulaError, ModelError, EvaluationError, MereologyError, SearchError, FockError, OSError)


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    """Raises UsageError instead of printing and exiting, so run() can report it."""

    def error(self, message):
        raise UsageError(f"{self.format_usage().strip()}\n{self.prog}: error: {message}")


@dataclass
class CommandResult:
    exit_code: int
    text: str = ""
    payload: Dict[str, Any] = field(default_factory=dict)
    error: str = ""


def _verdict_exit(positive: bool) -> int:
    return EXIT_OK if positive else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------

def _formula_text(args) -> Optional[str]:
    if getattr(args, "formula_file", None):
        try:
            return Path(args.formula_file).read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise FormulaError(f"formula file {args.formula_file} is not UTF-8 ({e})") from e
    return getattr(args, "formula", None)


def _require_formula(args):
    text = _formula_text(args)
    if text is None:
        raise UsageError(f"{args.command}: a formula is required (--formula or --formula-file)")
    return parse(text)


def _bindings(pairs: Sequence[str]) -> Dict[str, str]:
    env = {}
    for item in pairs or ():
        var, sep, element = item.partition("=")
        if not sep or not var or not element:
            raise UsageError(f"--bind expects var=element, got {item!r}")
        env[var.strip()] = element.strip()
    return env


def parse_state_spec(spec: str, n_max: int, eps: float) -> FockState:
    """
    Build a state from ``number:N``, ``coherent:Z`` or ``superpose:n1,n2[,...][@c1,c2,...]``.

    Z and the coefficients are Python complex literals such as ``2``, ``1.5`` or ``1+0.5j``.
    """
    kind, sep, body = spec.partition(":")
    if not sep or not body:
        raise UsageError(f"state spec must look like kind:value, got {spec!r}")
    try:
        if kind == "number":
            return number_state(int(body), n_max)
        if kind == "coherent":
            return coherent(complex(body), n_max, eps)
        if kind == "superpose":
            numbers_text, _, coefficients_text = body.partition("@")
            numbers = [int(x) for x in numbers_text.split(",")]
            if coefficients_text:
                coefficients = [complex(x) for x in coefficients_text.split(",")]
            else:
                coefficients = [1.0] * len(numbers)
            return superpose([number_state(n, n_max) for n in numbers], coefficients)
    except ValueError as e:
        if isinstance(e, FockError):
            raise
        raise UsageError(f"bad state spec {spec!r}: {e}") from e
    raise UsageError(f"unknown state kind {kind!r}; use number, coherent or superpose")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_parse(args, cfg: Config, slog: StructuredEventLogger) -> CommandResult:
    f = _require_formula(args)
    fv = sorted(free_vars(f))
    payload = {"formula": render(f), "free_vars": fv, "ast": to_dict(f)}
    lines = [render(f), f"free variables: {', '.join(fv) if fv else '(none)'}"]
    if args.expand:
        expanded = render(expand_macros(f))
        payload["expanded"] = expanded
        lines.append(f"expanded: {expanded}")
    slog.log_formula_parsed(payload["formula"], fv, args.expand)
    return CommandResult(EXIT_OK, "\n".join(lines), payload)


def cmd_eval(args, cfg: Config, slog: StructuredEventLogger) -> CommandResult:
    s = load_file(args.model)
    f = _require_formula(args)
    env = _bindings(args.bind)
    value = evaluate(s, f, env)
    payload = {"formula": render(f), "bindings": env, "value": value}
    return CommandResult(_verdict_exit(value), "true" if value else "false", payload)


def cmd_check(args, cfg: Config, slog: StructuredEventLogger) -> CommandResult:
    s = load_file(args.model)
    report = check_axioms(s, resolve_axioms(args.axioms or cfg.default_axioms), structured_logger=slog)
    lines = []
    for entry in report.entries:
        line = f"{entry.axiom}: {entry.verdict.value}"
        if entry.witness is not None:
            binding = ", ".join(f"{k}={v}" for k, v in entry.witness.items()) or "none"
            line += f" (witness {binding}; falsified: {render(entry.falsified)})"
        lines.append(line)
    failures = len(report.failures)
    lines.append("result: all checked axioms hold" if report.passed else f"result: {failures} axiom(s) fail")
    return CommandResult(_verdict_exit(report.passed), "\n".join(lines), report.to_dict())


def cmd_find(args, cfg: Config, slog: StructuredEventLogger) -> CommandResult:
    mode = SearchMode(args.mode)
    text = _formula_text(args)
    target = parse(text) if text is not None else None
    if mode is not SearchMode.COUNT and target is None:
        raise UsageError(f"find --mode {mode.value} needs --formula or --formula-file")
    spec = SearchSpec(
        max_size=args.size if args.size is not None else cfg.finder_max_size,
        axioms=resolve_axioms(args.axioms if args.axioms is not None else cfg.default_axioms),
        target=target,
        mode=mode,
        symmetry=args.symmetry or cfg.finder_symmetry,
        workers=args.workers or cfg.finder_workers,
    )
    outcome = run_search(spec, structured_logger=slog)
    payload: Dict[str, Any] = {"mode": mode.value, "max_size": spec.max_size, "axioms": list(spec.axioms)}

    if mode is SearchMode.COUNT:
        payload.update(count=outcome.count, isomorphism_classes=outcome.isomorphism_classes)
        text = f"size {spec.max_size}: {outcome.count} structure(s)"
        if outcome.isomorphism_classes is not None:
            text += f"\nup to isomorphism: {outcome.isomorphism_classes}"
        return CommandResult(EXIT_OK, text, payload)

    kind = "model" if mode is SearchMode.MODEL else "countermodel"
    payload.update(found=outcome.found, size=outcome.size,
                   structure=outcome.structure.to_dict() if outcome.structure else None)
    if not outcome.found:
        return CommandResult(EXIT_NEGATIVE, f"no {kind} up to size {spec.max_size}", payload)
    if args.out:
        save_file(outcome.structure, args.out)
    return CommandResult(EXIT_OK, f"{kind} of size {outcome.size}:\n{save(outcome.structure).rstrip()}", payload)


def cmd_classify(args, cfg: Config, slog: StructuredEventLogger) -> CommandResult:
    s = load_file(args.model)
    predicate = parse_predicate(args.predicate) if args.predicate else None
    report = classify(s, args.element, predicate, structured_logger=slog)
    return CommandResult(_verdict_exit(report.positive), report.summary(), report.to_dict())


def cmd_coherent(args, cfg: Config, slog: StructuredEventLogger) -> CommandResult:
    n_max = args.nmax if args.nmax is not None else cfg.fock_default_nmax
    eps = args.eps if args.eps is not None else cfg.fock_epsilon
    state = coherent(args.z, n_max, eps)
    distribution = number_distribution(state, eps)
    eigen = is_number_eigenstate(state, cfg.fock_eigen_tolerance, eps)
    mean = expected_number(state, eps)
    variance = number_variance(state, eps)
    energy = mode_energy(state, args.omega, eps)
    payload = {
        "z": [args.z.real, args.z.imag],
        "n_max": n_max,
        "mean": mean,
        "variance": variance,
        "energy": energy,
        "omega": args.omega,
        "truncation_deficit": state.deficit,
        "definite": eigen.definite,
        "distribution": [float(p) for p in distribution],
    }
    slog.log_fock_state(state.label, n_max, eigen.definite, mean, state.deficit)

    lines = [f"state {state.label}  n_max {n_max}"]
    if args.stats:
        lines += [
            f"mean number         {mean:.9f}",
            f"variance            {variance:.9f}",
            f"mode energy         {energy:.9f} (omega {args.omega:g})",
            f"truncation deficit  {state.deficit:.3e}",
            f"number eigenstate   {'yes' if eigen.definite else 'no'} (max P(n) {eigen.max_probability:.6f})",
        ]
    else:
        lines.append("n  probability")
        lines += [f"{n}  {p:.12g}" for n, p in enumerate(distribution)]
    if args.csv:
        Path(args.csv).write_text(distribution_csv(state, eps), encoding="utf-8")
        payload["csv"] = args.csv
        lines.append(f"wrote distribution to {args.csv}")
    return CommandResult(EXIT_OK, "\n".join(lines), payload)


def cmd_bridge(args, cfg: Config, slog: StructuredEventLogger) -> CommandResult:
    n_max = args.nmax if args.nmax is not None else cfg.fock_default_nmax
    eps = args.eps if args.eps is not None else cfg.fock_epsilon
    tol = args.tol if args.tol is not None else cfg.fock_eigen_tolerance
    state = parse_state_spec(args.state_spec, n_max, eps)
    result = to_structure(state, tol, eps, structured_logger=slog)
    report = result.report
    lines = [
        f"state {state.label}: {'definite' if result.definite else 'no definite'} photon number, "
        f"<N> = {result.mean_number:.6f}, {result.photons} photon part(s)",
        report.summary(),
    ]
    payload = {
        "state": state.label,
        "definite": result.definite,
        "mean_number": result.mean_number,
        "photons": result.photons,
        "classification": report.to_dict(),
        "structure": result.structure.to_dict(),
    }
    positive = report.positive
    if args.predicate:
        predicate_report = classify(result.structure, report.subject, parse_predicate(args.predicate),
                                    structured_logger=slog)
        lines.append(predicate_report.summary())
        payload["predicate_classification"] = predicate_report.to_dict()
        positive = predicate_report.positive
    if args.out:
        save_file(result.structure, args.out)
        payload["out"] = args.out
        lines.append(f"wrote model to {args.out}")
    return CommandResult(_verdict_exit(positive), "\n".join(lines), payload)


# ---------------------------------------------------------------------------
# Parser and dispatch
# ---------------------------------------------------------------------------

def _add_formula_input(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--formula", help="Formula in concrete syntax")
    group.add_argument("--formula-file", help="File containing the formula")


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit the JSON payload instead of text")

    parser = _ArgumentParser(prog="zfstar", description="ZF* set theory with physical things: parthood workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", parents=[common], help="Parse and render a formula")
    _add_formula_input(s)
    s.add_argument("--expand", action="store_true", help="Also print the macro-free expansion")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("eval", parents=[common], help="Evaluate a formula in a model")
    s.add_argument("--model", required=True, help="Model JSON file")
    _add_formula_input(s)
    s.add_argument("--bind", action="append", default=[], metavar="VAR=ELEMENT",
                   help="Bind a free variable (repeatable)")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("check", parents=[common], help="Check axioms against a model")
    s.add_argument("--model", required=True, help="Model JSON file")
    s.add_argument("--axioms", help="Group (pt, sets, pt+sets) or comma-separated axiom names")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("find", parents=[common], help="Search for models, countermodels, or count structures")
    s.add_argument("--size", type=int, help="Largest domain size (exact size in count mode)")
    _add_formula_input(s)
    s.add_argument("--mode", choices=[m.value for m in SearchMode], default=SearchMode.MODEL.value)
    s.add_argument("--axioms", help="Axioms imposed on every candidate")
    s.add_argument("--symmetry", action="store_true", help="Also report counts up to isomorphism")
    s.add_argument("--workers", type=int, help="Worker processes")
    s.add_argument("--out", help="Write the structure found to this model file")
    s.set_defaults(func=cmd_find)

    s = sub.add_parser("classify", parents=[common], help="Classify a PT as Cantorian/classical or not")
    s.add_argument("--model", required=True, help="Model JSON file")
    s.add_argument("--element", required=True, help="The PT to classify")
    s.add_argument("--predicate", help="Property of parts, written 'b: formula'")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("coherent", parents=[common], help="Photon statistics of a coherent state")
    s.add_argument("--z", type=complex, required=True, help="Coherent amplitude, e.g. 2 or 1+0.5j")
    s.add_argument("--nmax", type=int, help="Truncation")
    s.add_argument("--eps", type=float, help="Allowed truncation deficit")
    s.add_argument("--omega", type=float, default=1.0, help="Mode frequency for the energy")
    s.add_argument("--stats", action="store_true", help="Print moments instead of the distribution")
    s.add_argument("--csv", help="Write the distribution as CSV to this path")
    s.set_defaults(func=cmd_coherent)

    s = sub.add_parser("bridge", parents=[common], help="Render a Fock state as a model and classify it")
    s.add_argument("--state-spec", required=True,
                   help="number:N, coherent:Z or superpose:n1,n2[,...][@c1,c2,...]")
    s.add_argument("--nmax", type=int, help="Truncation")
    s.add_argument("--eps", type=float, help="Allowed truncation deficit")
    s.add_argument("--tol", type=float, help="Eigenstate tolerance")
    s.add_argument("--predicate", help="Also classify the whole with respect to this property of parts")
    s.add_argument("--out", help="Write the resulting model to this file")
    s.set_defaults(func=cmd_bridge)

    return parser


def run(argv: Sequence[str], cfg: Optional[Config] = None,
        structured_logger: Optional[StructuredEventLogger] = None) -> CommandResult:
    """Execute one command line and return its result; never exits the process."""
    cfg = cfg or Config()
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except UsageError as e:
        return CommandResult(EXIT_USAGE, error=str(e))
    except SystemExit as e:
        # --help
        return CommandResult(EXIT_OK if not e.code else EXIT_USAGE)

    slog = structured_logger or StructuredEventLogger(cfg.logger_name)
    slog.set_correlation_id(new_correlation_id())
    start = time.monotonic()
    try:
        result = args.func(args, cfg, slog)
    except UsageError as e:
        result = CommandResult(EXIT_USAGE, payload={"error": str(e)}, error=f"{parser.prog} {args.command}: {e}")
    except INPUT_ERRORS as e:
        logger.info(f"{args.command} rejected its input: {e}")
        result = CommandResult(EXIT_USAGE, payload={"error": str(e)}, error=f"error: {e}")

    if args.json and result.exit_code != EXIT_USAGE:
        result.text = json.dumps(result.payload, indent=2, sort_keys=True)
    slog.log_cli_command(args.command, result.exit_code,
                         duration_ms=int((time.monotonic() - start) * 1000),
                         error_message=result.error or None)
    return result
