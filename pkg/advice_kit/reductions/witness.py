"""
Weihrauch reduction witnesses as runnable objects.

A witness for ``f <= g`` is a pair of machines: ``pre`` turns an ``f``
instance into a ``g`` instance, and ``post`` reads ``<x, z>`` with ``z`` an
answer of ``g`` and produces an answer of ``f``. The harness plays the part of
an arbitrary realizer of ``g`` with the target problem's oracles.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

from ..constants import DEFAULT_FUEL, ORACLE_PRECISION
from ..errors import AdviceKitError, FuelExhausted
from ..machines.catalog import identity_machine
from ..machines.machine import Diverged, PrefixMachine, RunResult, RunTrace, compose_machines, trace_machine
from ..machines.wiring import cross_machine, parallel_machine, projection_machine, sandwich_machine
from ..names import Name, Prefix, pair_names
from ..problems.base import MultiProblem
from ..problems.catalog import get_problem

logger = logging.getLogger(__name__)

Solver = Callable[[Name], Name]


@dataclass(slots=True, frozen=True)
class ReductionWitness:
    """``source <= target`` through ``pre`` and ``post``."""

    witness_id: str
    source: str
    target: str
    pre: PrefixMachine
    post: PrefixMachine
    description: str = ""

    @property
    def source_problem(self) -> MultiProblem:
        return get_problem(self.source)

    @property
    def target_problem(self) -> MultiProblem:
        return get_problem(self.target)


def solver_for(problem_id: str, variant: str | None = None, precision: int = ORACLE_PRECISION) -> Solver:
    """Oracle-backed solver of ``problem_id``.

    Example:
        >>> from advice_kit.names import pair_names, zero_name, eventually_periodic, BINARY
        >>> solve = solver_for("LLPO", "least")
        >>> solve(pair_names(eventually_periodic(BINARY, [1], [0]), zero_name())).take(2).symbols
        (1, 1)
    """

    oracle = get_problem(problem_id).oracle(variant)
    return lambda y: oracle(y, precision)


def trace_reduction(
    witness: ReductionWitness,
    solver: Solver,
    x: Name,
    k: int,
    fuel: int = DEFAULT_FUEL,
) -> RunTrace:
    """Evaluate ``post<x, solver(pre x)>`` to ``k`` symbols, with the post run's annotations."""

    try:
        answer = solver(witness.pre.on(x, fuel))
    except FuelExhausted as exc:
        logger.debug("%s: pre-processing ran out of fuel", witness.witness_id)
        partial = Prefix(witness.post.output_alphabet, ())
        return RunTrace(Diverged(exc.steps, partial), exc.steps)
    return trace_machine(witness.post, pair_names(x, answer), k, fuel)


def apply_reduction(
    witness: ReductionWitness,
    solver: Solver,
    x: Name,
    k: int,
    fuel: int = DEFAULT_FUEL,
) -> RunResult:
    """Output prefix of ``F<x, G K x>`` or ``Diverged``."""

    return trace_reduction(witness, solver, x, k, fuel).output


def identity_witness(problem_id: str) -> ReductionWitness:
    """``f <= f`` with ``pre`` the identity and ``post`` the second projection."""

    problem = get_problem(problem_id)
    alphabet = problem.input_space.alphabet.join(problem.output_space.alphabet)
    return ReductionWitness(
        f"id:{problem_id}",
        problem_id,
        problem_id,
        identity_machine(problem.input_space.alphabet),
        projection_machine(1, 2, alphabet),
        f"{problem_id} reduces to itself",
    )


def compose_reductions(first: ReductionWitness, second: ReductionWitness) -> ReductionWitness:
    """``f <= g`` and ``g <= h`` give ``f <= h``."""

    if first.target != second.source:
        raise AdviceKitError(f"cannot chain {first.witness_id} into {second.witness_id}")
    return ReductionWitness(
        f"{second.witness_id}.{first.witness_id}",
        first.source,
        second.target,
        compose_machines(second.pre, first.pre),
        sandwich_machine(first.post, second.post, first.pre, f"{first.post.machine_id}<id, {second.post.machine_id}>"),
        f"{first.source} <= {first.target} <= {second.target}",
    )


def product_reductions(left: ReductionWitness, right: ReductionWitness) -> ReductionWitness:
    """``f1 <= g1`` and ``f2 <= g2`` give ``f1 x f2 <= g1 x g2``."""

    return ReductionWitness(
        f"({left.witness_id} x {right.witness_id})",
        f"{left.source}x{right.source}",
        f"{left.target}x{right.target}",
        parallel_machine([left.pre, right.pre]),
        cross_machine([left.post, right.post]),
        "componentwise",
    )
