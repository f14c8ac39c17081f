"""
``advice-kit`` command-line entry point.

Every subcommand prints exactly one JSON report to stdout; logging and
progress bars go to stderr. Exit codes: 0 success, 1 other library error,
2 diverged, 3 fixture or report parse error, 4 verifier refuted,
5 replay mismatch, 64 usage.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, NoReturn, Sequence

from .advice.catalog import advice_machine_ids, get_advice_machine
from .advice.machine import sound_on, trace_with_advice
from .complexity import BoundVerdict, fnp_witness, poly_bound_check, sample_inputs, tau_profile
from .constants import DEBUG, PADDED_DELAY_SHIFT
from .errors import AdviceKitError, ConfigError, FixtureParseError, MalformedName, UnknownCatalogEntry
from .fixtures import Fixture, load_fixture, parse_value
from .machines.catalog import get_machine, machine_ids, padded_delay_machine
from .machines.machine import Diverged
from .measures.montecarlo import closed_measure_bounds, monte_carlo_success
from .names import Name, Prefix
from .problems.base import MultiProblem, Verdict, constant_answer
from .problems.catalog import get_problem, problem_ids
from .reductions.catalog import get_witness, witness_ids
from .reductions.witness import ReductionWitness, solver_for, trace_reduction
from .reports import RunReport, load_report, same_payload
from .settings import RunSettings
from .spaces.descriptors import SpaceKind
from .spaces.literals import parse_set_literal
from .spaces.reals import decode_real_prefix, encode_rational
from .spaces.sets import ClosedSetName

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DIVERGED = 2
EXIT_PARSE = 3
EXIT_REFUTED = 4
EXIT_REPLAY_MISMATCH = 5
EXIT_USAGE = 64

DEMO_BOUND_RANGE = range(1, 11)
DEMO_PADDED_KMAX = 12
DEMO_G_KMAX = 6
DEMO_G_BOUND = (8, 1)


class UsageError(Exception):
    """Bad arguments; the message is printed with the usage line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(slots=True)
class Outcome:
    """Payload plus the exit code it maps to."""

    payload: Dict[str, Any] = field(default_factory=dict)
    code: int = EXIT_OK
    seed: int | None = None
    depth: int | None = None


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="advice-kit", description="Type-2 computation with advice: runs, reductions, estimates.")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr.")
    parser.add_argument("--jobs", type=int, default=None, help="Worker threads for trials and profiles.")
    parser.add_argument("--fuel", type=int, default=None, help="Step budget per machine run (ADVICE_KIT_FUEL).")
    parser.add_argument("--progress", action="store_true", help="Progress bars on stderr.")
    parser.add_argument("--replay", type=Path, default=None, metavar="REPORT", help="Re-run a saved report and compare payloads.")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")

    solve = commands.add_parser("solve", help="Run a problem's oracle on a fixture and verify the answer.")
    solve.add_argument("--problem", default=None, help=f"Problem id, e.g. {', '.join(problem_ids()[:4])}.")
    solve.add_argument("--fixture", type=Path, required=True)
    solve.add_argument("--oracle", default=None, help="Oracle variant.")
    solve.add_argument("--depth", type=int, default=None)

    reduce = commands.add_parser("reduce", help="Apply a reduction witness with the target's oracle.")
    reduce.add_argument("--witness", required=True, help=f"One of {', '.join(witness_ids())}.")
    reduce.add_argument("--fixture", type=Path, required=True)
    reduce.add_argument("--oracle", default=None, help="Oracle variant of the target problem.")
    reduce.add_argument("--depth", type=int, default=None)

    advice_run = commands.add_parser("advice-run", help="Run an advice machine with given advice.")
    advice_run.add_argument("--machine", required=True, help=f"One of {', '.join(advice_machine_ids())}.")
    advice_run.add_argument("--fixture", type=Path, required=True)
    advice_run.add_argument("--advice", required=True, help="Advice value, e.g. 'nat 1' or 'bits 0,1'.")
    advice_run.add_argument("--depth", type=int, default=None)

    estimate = commands.add_parser("estimate", help="Monte-Carlo success rate of a random-advice machine.")
    estimate.add_argument("--machine", required=True)
    instance = estimate.add_mutually_exclusive_group(required=True)
    instance.add_argument("--set", dest="set_literal", default=None, help="Closed-set literal as the instance.")
    instance.add_argument("--fixture", type=Path, default=None)
    estimate.add_argument("--trials", type=int, required=True)
    estimate.add_argument("--seed", type=int, default=0)
    estimate.add_argument("--depth", type=int, default=None)

    complexity = commands.add_parser("complexity", help="Step-count profile of a Cantor machine.")
    complexity.add_argument("--machine", required=True, help=f"One of {', '.join(machine_ids())}.")
    complexity.add_argument("--kmax", type=int, required=True)
    complexity.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    complexity.add_argument("--samples", type=int, default=8, help="Random inputs in sampled mode.")
    complexity.add_argument("--seed", type=int, default=0)
    complexity.add_argument("--bound", type=int, nargs=2, metavar=("C", "D"), default=None, help="Check tau(k) <= C k^D.")

    commands.add_parser("demo", help="The circle example and the FP versus FNP demonstration.")
    return parser


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose or DEBUG else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _fixture(path: Path) -> Fixture:
    fixture = load_fixture(path)
    if not fixture.components:
        raise FixtureParseError(f"{path} lists no instance components")
    return fixture


def _render_answer(problem: MultiProblem, answer: Prefix) -> Dict[str, Any]:
    rendered: Dict[str, Any] = {"symbols": answer.render()}
    try:
        value = constant_answer(answer)
    except MalformedName:
        value = None
    if value is not None and problem.output_space.kind in {SpaceKind.FINITE, SpaceKind.NAT}:
        rendered["answer"] = str(value)
    elif problem.output_space.kind is SpaceKind.REAL_SIGNED:
        rendered["enclosure"] = decode_real_prefix(answer)
    return rendered


def _verdict_code(verdict: Verdict) -> int:
    return EXIT_OK if verdict is Verdict.CONSISTENT else EXIT_REFUTED


def _run_solve(args: argparse.Namespace, settings: RunSettings) -> Outcome:
    fixture = _fixture(args.fixture)
    problem_id = args.problem or fixture.problem_id
    if problem_id is None:
        raise UsageError("solve needs --problem or a 'problem:' line in the fixture")
    problem = get_problem(problem_id)
    x = fixture.instance
    answer = problem.solve(x, settings.precision, args.oracle).take(settings.depth)
    verdict = problem.verify(x, answer, settings.depth)
    payload = {"problem": problem.problem_id, "oracle": args.oracle or problem.oracle_variants()[0], "verifier": verdict}
    payload.update(_render_answer(problem, answer))
    return Outcome(payload, _verdict_code(verdict), depth=settings.depth)


_SIZED_WITNESSES: Dict[str, Callable[[Fixture], str]] = {
    "mlpo-lineq": lambda fixture: f"mlpo-lineq:{len(fixture.components)}",
}


def _witness_for(witness_id: str, fixture: Fixture) -> ReductionWitness:
    """Shipped witness, sized to the fixture where the family needs a size."""

    witness = get_witness(witness_id)
    if fixture.problem_id is not None and witness.source != fixture.problem_id and witness_id in _SIZED_WITNESSES:
        witness = get_witness(_SIZED_WITNESSES[witness_id](fixture))
    if fixture.problem_id is not None and witness.source != fixture.problem_id:
        raise UsageError(f"{witness.witness_id} reduces {witness.source}, the fixture is {fixture.problem_id}")
    return witness


def _run_reduce(args: argparse.Namespace, settings: RunSettings) -> Outcome:
    fixture = _fixture(args.fixture)
    witness = _witness_for(args.witness, fixture)
    x = fixture.instance
    solver = solver_for(witness.target, args.oracle, settings.precision)
    trace = trace_reduction(witness, solver, x, settings.depth, settings.fuel)
    payload: Dict[str, Any] = {
        "witness": witness.witness_id,
        "source": witness.source,
        "target": witness.target,
        "oracle": args.oracle or witness.target_problem.oracle_variants()[0],
        "steps": trace.steps,
        "rounds": trace.annotations.get("rounds"),
        "precisionUsed": trace.annotations.get("precision"),
    }
    if isinstance(trace.output, Diverged):
        payload["diverged"] = {"steps": trace.output.steps, "partial": trace.output.partial}
        return Outcome(payload, EXIT_DIVERGED, depth=settings.depth)
    source = witness.source_problem
    verdict = source.verify(x, trace.output, settings.depth)
    payload["verifier"] = verdict
    payload.update(_render_answer(source, trace.output))
    return Outcome(payload, _verdict_code(verdict), depth=settings.depth)


def _run_advice(args: argparse.Namespace, settings: RunSettings) -> Outcome:
    am = get_advice_machine(args.machine)
    x = _fixture(args.fixture).instance
    w = parse_value(args.advice)
    trace = trace_with_advice(am, x, w, settings.depth, settings.fuel)
    payload: Dict[str, Any] = {
        "machine": am.machine_id,
        "problem": am.problem_id,
        "scheme": am.scheme.label(),
        "advice": w.describe(),
        "adviceInSet": am.advice_set(x).contains(w, settings.depth),
        "steps": trace.steps,
    }
    if isinstance(trace.output, Diverged):
        payload["diverged"] = {"steps": trace.output.steps, "partial": trace.output.partial}
        return Outcome(payload, EXIT_DIVERGED, depth=settings.depth)
    verdict = am.problem.verify(x, trace.output, settings.depth)
    payload["verifier"] = verdict
    payload.update(_render_answer(am.problem, trace.output))
    return Outcome(payload, _verdict_code(verdict), depth=settings.depth)


def _run_estimate(args: argparse.Namespace, settings: RunSettings, progress: bool) -> Outcome:
    am = get_advice_machine(args.machine)
    bounds = None
    if args.set_literal is not None:
        s = parse_set_literal(args.set_literal)
        x: Name = s.name
        if isinstance(s, ClosedSetName) and s.space.kind is SpaceKind.CANTOR:
            bounds = closed_measure_bounds(s, settings.scan_depth)
    else:
        x = _fixture(args.fixture).instance
    result = monte_carlo_success(am, x, args.trials, settings.depth, settings.fuel, args.seed, settings.jobs, progress)
    payload: Dict[str, Any] = {
        "machine": am.machine_id,
        "successes": result.successes,
        "trials": result.trials,
        "pointEstimate": result.point_estimate,
        "wilson99": list(result.wilson99),
        "epsilonLowerBound": result.epsilon_lower_bound,
    }
    if bounds is not None:
        payload["measureBounds"] = bounds
    return Outcome(payload, seed=args.seed, depth=settings.depth)


def _run_complexity(args: argparse.Namespace, settings: RunSettings, progress: bool) -> Outcome:
    machine = get_machine(args.machine)
    inputs = None if args.mode == "exact" else sample_inputs(args.samples, args.seed)
    profile = tau_profile(machine, args.kmax, inputs, jobs=settings.jobs, progress=progress)
    payload: Dict[str, Any] = {
        "machine": profile.machine_id,
        "mode": profile.mode,
        "inputsUsed": profile.inputs_used,
        "points": [[p.k, p.max_steps] for p in profile.points],
    }
    if args.bound is not None:
        check = poly_bound_check(profile, *args.bound)
        payload["bound"] = {"c": args.bound[0], "d": args.bound[1], "verdict": check.verdict, "violatingK": check.violating_k}
    return Outcome(payload, seed=None if inputs is None else args.seed)


def _run_demo(settings: RunSettings, progress: bool) -> Outcome:
    """Circle example with both branches, then the padded-delay profiles."""

    circle = get_advice_machine("circle")
    circle_runs = {}
    for value in (Fraction(1, 3), Fraction(3, 2)):
        x = encode_rational(value)
        verdicts = sound_on(circle, x, settings.depth, fuel=settings.fuel)
        circle_runs[f"{value.numerator}/{value.denominator}"] = {
            "adviceSet": circle.advice_set(x).describe(),
            "verdicts": [v if isinstance(v, Verdict) else "diverged" for _, v in verdicts],
        }

    padded = padded_delay_machine(PADDED_DELAY_SHIFT)
    direct = tau_profile(padded, DEMO_PADDED_KMAX, sample_inputs(4, settings.seed), jobs=settings.jobs, progress=progress)
    rejected = all(
        poly_bound_check(direct, c, d).verdict is BoundVerdict.REJECT
        for c in DEMO_BOUND_RANGE
        for d in DEMO_BOUND_RANGE
    )
    g, _ = fnp_witness(padded)
    g_profile = tau_profile(g, DEMO_G_KMAX, jobs=settings.jobs, progress=progress)
    g_check = poly_bound_check(g_profile, *DEMO_G_BOUND)
    payload = {
        "circle": circle_runs,
        "fpVersusFnp": {
            "direct": {"mode": direct.mode, "points": [[p.k, p.max_steps] for p in direct.points]},
            "directRejectsAllBounds": rejected,
            "g": {"machine": g.machine_id, "mode": g_profile.mode, "points": [[p.k, p.max_steps] for p in g_profile.points]},
            "gBound": {"c": DEMO_G_BOUND[0], "d": DEMO_G_BOUND[1], "verdict": g_check.verdict},
        },
    }
    ok = rejected and g_check.verdict is BoundVerdict.ACCEPT
    return Outcome(payload, EXIT_OK if ok else EXIT_ERROR, seed=settings.seed, depth=settings.depth)


def _dispatch(args: argparse.Namespace, settings: RunSettings) -> Outcome:
    progress = bool(args.progress)
    match args.command:
        case "solve":
            return _run_solve(args, settings)
        case "reduce":
            return _run_reduce(args, settings)
        case "advice-run":
            return _run_advice(args, settings)
        case "estimate":
            return _run_estimate(args, settings, progress)
        case "complexity":
            return _run_complexity(args, settings, progress)
        case "demo":
            return _run_demo(settings, progress)
    raise UsageError("a command is required")


def run_command(argv: Sequence[str]) -> tuple[RunReport, int]:
    """Parse ``argv``, run it, and return the report with its exit code.

    Raises:
        UsageError: No command or inconsistent arguments.
        AdviceKitError: Library failures, mapped to exit codes by :func:`main`.
        SystemExit: argparse usage errors (code 64).
    """

    parser = _build_parser()
    args = parser.parse_args(list(argv))
    _configure_logging(args.verbose)
    if args.replay is not None:
        return _replay(args.replay, args)
    if args.command is None:
        raise UsageError("a command is required")
    settings = RunSettings.from_env().with_overrides(
        fuel=args.fuel,
        jobs=args.jobs,
        depth=getattr(args, "depth", None),
    )
    if settings.depth < 0 or settings.fuel < 0 or settings.jobs < 1:
        raise UsageError("depth and fuel must be non-negative and jobs positive")
    outcome = _dispatch(args, settings)
    command = tuple(_without_option(argv, "--jobs"))
    if args.fuel is None:
        command = ("--fuel", str(settings.fuel), *command)
    report = RunReport(command, outcome.seed, outcome.depth, settings.fuel, outcome.payload)
    return report, outcome.code


def _without_option(argv: Sequence[str], option: str) -> List[str]:
    out: List[str] = []
    tokens = iter(argv)
    for token in tokens:
        if token == option:
            next(tokens, None)
        elif not token.startswith(f"{option}="):
            out.append(token)
    return out


def _replay(path: Path, args: argparse.Namespace) -> tuple[RunReport, int]:
    saved = load_report(path)
    command = list(saved.command)
    if args.jobs is not None:
        command = ["--jobs", str(args.jobs), *_without_option(command, "--jobs")]
    logger.debug("replaying %s", " ".join(command))
    report, code = run_command(command)
    report = RunReport(saved.command, report.seed, report.depth, report.fuel, report.payload, report.version)
    if not same_payload(saved, report):
        logger.error("replayed payload differs from %s", path)
        return report, EXIT_REPLAY_MISMATCH
    return report, code


def main(argv: Sequence[str] | None = None) -> int:
    """Console entry point.

    Example:
        >>> main(["complexity", "--machine", "identity", "--kmax", "3"])  # doctest: +SKIP
        0
    """

    arguments = list(sys.argv[1:] if argv is None else argv)
    try:
        report, code = run_command(arguments)
    except UsageError as exc:
        _build_parser().print_usage(sys.stderr)
        print(f"advice-kit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, UnknownCatalogEntry) as exc:
        print(f"advice-kit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FixtureParseError as exc:
        print(f"advice-kit: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AdviceKitError as exc:
        logger.debug("run failed", exc_info=True)
        print(f"advice-kit: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(report.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
