"""
Machines that take advice.

An ``AdviceMachine`` pairs a core machine, run on ``<x, w>``, with the
advice family ``x -> A_x`` under which the core is promised to be correct.
Wrong advice carries no promise: the core may diverge or emit anything.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, List, Tuple

from ..constants import DEFAULT_FUEL
from ..errors import SchemeMismatch
from ..machines.machine import Diverged, PrefixMachine, RunResult, RunTrace, trace_machine
from ..names import Name, pair_names
from ..problems.base import MultiProblem, Verdict
from ..problems.catalog import get_problem
from ..spaces.sets import ClosedSetName, OpenSetName
from .schemes import AdviceScheme
from .sets import AdviceSet, ClosedAdviceSet

logger = logging.getLogger(__name__)

AdviceFamilyMap = Callable[[Name], AdviceSet]


@dataclass(slots=True, frozen=True)
class AdviceMachine:
    """A realizer with advice.

    Attributes:
        machine_id: Catalog or derived id.
        problem_id: Id of the problem the core solves under correct advice.
        scheme: Advice space and house.
        core: Machine on ``<x, w>``.
        family: ``x -> A_x``.
        advice_map: For effective advice, a machine from ``x`` to a name of the
            closed set ``A(x)``.
        description: One-line summary.
    """

    machine_id: str
    problem_id: str
    scheme: AdviceScheme
    core: PrefixMachine
    family: AdviceFamilyMap
    advice_map: PrefixMachine | None = None
    description: str = ""

    def __post_init__(self) -> None:
        if self.scheme.effective and self.advice_map is None:
            raise SchemeMismatch(f"{self.machine_id}: effective advice needs an advice map")

    @property
    def problem(self) -> MultiProblem:
        return get_problem(self.problem_id)

    def advice_closed_set(self, x: Name) -> ClosedSetName:
        """Name of ``A(x)`` computed by the advice map."""

        if self.advice_map is None:
            raise SchemeMismatch(f"{self.machine_id} has no advice map")
        space = self.scheme.space
        return ClosedSetName(space, OpenSetName(space, self.advice_map.on(x)))

    def advice_set(self, x: Name) -> AdviceSet:
        if self.advice_map is not None:
            return ClosedAdviceSet(self.advice_closed_set(x))
        return self.family(x)


def trace_with_advice(am: AdviceMachine, x: Name, w: Name, k: int, fuel: int = DEFAULT_FUEL) -> RunTrace:
    return trace_machine(am.core, pair_names(x, w), k, fuel)


def run_with_advice(am: AdviceMachine, x: Name, w: Name, k: int, fuel: int = DEFAULT_FUEL) -> RunResult:
    """Run the core on ``<x, w>`` until ``k`` output symbols exist.

    Example:
        >>> from advice_kit.advice.catalog import get_advice_machine
        >>> from advice_kit.names import constant_name
        >>> from advice_kit.spaces.reals import decode_real_prefix, encode_rational
        >>> from fractions import Fraction
        >>> circle = get_advice_machine("circle")
        >>> out = run_with_advice(circle, encode_rational(Fraction(1, 3)), constant_name(1, circle.core.input_alphabet), 40)
        >>> decode_real_prefix(out).contains(Fraction(1, 3))
        True
    """

    return trace_with_advice(am, x, w, k, fuel).output


def sound_on(
    am: AdviceMachine,
    x: Name,
    depth: int,
    count: int = 3,
    fuel: int = DEFAULT_FUEL,
) -> List[Tuple[str, Verdict | Diverged]]:
    """Run the core with members of ``A_x`` and verify each output at ``depth``.

    Returns:
        ``(advice description, verdict or Diverged)`` per member tried.
    """

    results: List[Tuple[str, Verdict | Diverged]] = []
    for w in am.advice_set(x).members(count):
        output = run_with_advice(am, x, w, depth, fuel)
        if isinstance(output, Diverged):
            logger.debug("%s diverged with advice %s", am.machine_id, w.describe())
            results.append((w.describe(), output))
            continue
        results.append((w.describe(), am.problem.verify(x, output, depth)))
    return results
