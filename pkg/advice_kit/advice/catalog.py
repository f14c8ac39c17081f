"""
Shipped advice machines.

Ids:
    ``circle``: the circle example; Finite(2) advice, symbol 1 for the
    rational branch (copy ``x``), symbol 0 for the irrational one (``x - 1``).
    ``llpo-finite`` / ``llpo-random``: LLPO with the answer as discrete or
    random Finite(2) advice.
    ``lpo-count:n``: ``LPO^n`` given the number of zero components.
    ``c-nat``: closed choice on the naturals with effective advice.
    ``c-nat-geometric``, ``pc-cantor``, ``pc-interval``, ``pc-real``: choice
    problems answered by their random advice.
    ``lineq-oracle:n:m``: kernel vectors as advice.
    ``id-nat``, ``id-cantor``, ``id-real``: identities with unique advice;
    ``id-real-bit`` ignores a Finite(2) advice bit.
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, Iterator, List

from ..constants import SCAN_DEPTH
from ..errors import UnknownCatalogEntry
from ..machines.catalog import identity_machine
from ..machines.machine import PrefixMachine
from ..machines.tapes import SplitTape, Tape
from ..machines.wiring import copy_tape, projection_machine, repeat_symbol
from ..measures.specs import CANTOR_UNIFORM, LEBESGUE_REAL, LEBESGUE_UNIT, NAT_GEOMETRIC, finite_uniform
from ..names import BINARY, NATURAL, Alphabet, Name, constant_name, untuple_name
from ..problems.base import description_length, zero_status
from ..problems.catalog import get_problem
from ..problems.oracles import closed_of
from ..spaces.descriptors import CANTOR, NAT, REAL, UNIT_INTERVAL, SpaceDescriptor, finite_space, power
from ..spaces.reals import REAL_ALPHABET, exact_value, interval_map_program
from .machine import AdviceMachine
from .schemes import AdviceFamily, AdviceScheme
from .sets import AdviceSet, ClosedAdviceSet, DiscreteSet, SingletonSet, SolutionSet

logger = logging.getLogger(__name__)

TWO = finite_space(2)


def _zero_indices(x: Name, arity: int) -> List[int]:
    """Components of ``x`` equal to ``0^ω``, as far as a scan can tell."""

    zeros = []
    for index, part in enumerate(untuple_name(x, arity)):
        status = zero_status(part, max(SCAN_DEPTH, description_length(part) or 0))
        if status is None or status:
            zeros.append(index)
    return zeros


def circle_machine() -> AdviceMachine:
    """Identity on rationals of ``[0, 1)``, ``x - 1`` elsewhere; the advice picks the branch.

    Example:
        >>> from fractions import Fraction
        >>> from advice_kit.spaces.reals import encode_rational
        >>> circle_machine().advice_set(encode_rational(Fraction(1, 3))).describe()
        '{1}'
    """

    shifted = interval_map_program(1, lambda args: args[0] - 1)

    def program(tape: Tape) -> Iterator[int]:
        x_channel, w_channel = SplitTape(tape, 2).channels()
        if w_channel.read() == 1:
            yield from copy_tape(x_channel)
        else:
            yield from shifted(x_channel)

    def family(x: Name) -> AdviceSet:
        rational = x.periodic is not None and 0 <= exact_value(x) < 1
        return DiscreteSet(TWO, (1,) if rational else (0,))

    return AdviceMachine(
        "circle",
        "CIRCLE",
        AdviceScheme(TWO, AdviceFamily.DISCRETE_ALL),
        PrefixMachine("circle-core", program, REAL_ALPHABET, REAL_ALPHABET),
        family,
        description="the circle example: two branches, one advice bit",
    )


def _answer_core(machine_id: str) -> PrefixMachine:
    def program(tape: Tape) -> Iterator[int]:
        x_channel, w_channel = SplitTape(tape, 2).channels()
        yield from repeat_symbol(x_channel, w_channel.read())

    return PrefixMachine(machine_id, program, BINARY, BINARY)


def llpo_machine(random: bool = False) -> AdviceMachine:
    """LLPO with its answer bit as advice."""

    def family(x: Name) -> AdviceSet:
        return DiscreteSet(TWO, tuple(_zero_indices(x, 2)))

    scheme = (
        AdviceScheme(TWO, AdviceFamily.RANDOM_POSITIVE, finite_uniform(2))
        if random
        else AdviceScheme(TWO, AdviceFamily.DISCRETE_ALL)
    )
    machine_id = "llpo-random" if random else "llpo-finite"
    return AdviceMachine(machine_id, "LLPO", scheme, _answer_core(f"{machine_id}-core"), family)


def lpo_count_machine(count: int) -> AdviceMachine:
    """``LPO^count`` given how many components are zero.

    The core reads all components in rounds until ``count - c`` of them have
    shown a 1; the rest are the zero ones.
    """

    if count < 1:
        raise UnknownCatalogEntry("lpo-count needs n >= 1")

    def program(tape: Tape) -> Iterator[int]:
        x_channel, w_channel = SplitTape(tape, 2).channels()
        zeros = w_channel.read()
        parts = SplitTape(x_channel, count).channels() if count > 1 else (x_channel,)
        seen_one = [False] * count
        while sum(seen_one) < count - zeros:
            for index, part in enumerate(parts):
                if part.read() == 1:
                    seen_one[index] = True
        answers = [1 if seen else 0 for seen in seen_one]
        while True:
            yield from answers
            parts[0].read()

    def family(x: Name) -> AdviceSet:
        return DiscreteSet(finite_space(count + 1), (len(_zero_indices(x, count)),))

    problem_id = "LPO" if count == 1 else f"LPO^{count}"
    return AdviceMachine(
        f"lpo-count:{count}",
        problem_id,
        AdviceScheme(finite_space(count + 1), AdviceFamily.DISCRETE_ALL),
        PrefixMachine(f"lpo-count-core:{count}", program, Alphabet.finite(count + 1), BINARY),
        family,
        description="one discrete piece of advice decides n LPO instances",
    )


def _closed_family(space: SpaceDescriptor) -> Callable[[Name], AdviceSet]:
    return lambda x: ClosedAdviceSet(closed_of(space, x))


def choice_machine(machine_id: str) -> AdviceMachine:
    """Choice problems whose advice already is an answer; the core is the second projection."""

    match machine_id:
        case "c-nat":
            scheme = AdviceScheme(NAT, AdviceFamily.EFFECTIVE_CLOSED)
            problem_id, space, advice_map = "C_NAT", NAT, identity_machine(NATURAL)
        case "c-nat-geometric":
            scheme = AdviceScheme(NAT, AdviceFamily.RANDOM_POSITIVE, NAT_GEOMETRIC)
            problem_id, space, advice_map = "C_NAT", NAT, None
        case "pc-cantor":
            scheme = AdviceScheme(CANTOR, AdviceFamily.RANDOM_POSITIVE, CANTOR_UNIFORM)
            problem_id, space, advice_map = "PC_CANTOR", CANTOR, None
        case "pc-interval":
            scheme = AdviceScheme(UNIT_INTERVAL, AdviceFamily.RANDOM_POSITIVE, LEBESGUE_UNIT)
            problem_id, space, advice_map = "PC_INTERVAL", UNIT_INTERVAL, None
        case "pc-real":
            scheme = AdviceScheme(REAL, AdviceFamily.RANDOM_POSITIVE, LEBESGUE_REAL)
            problem_id, space, advice_map = "PC_REAL", REAL, None
        case _:
            raise UnknownCatalogEntry(f"unknown choice machine {machine_id!r}")
    return AdviceMachine(
        machine_id,
        problem_id,
        scheme,
        projection_machine(1, 2, NATURAL),
        _closed_family(space),
        advice_map,
        f"{problem_id} answered by its advice",
    )


def lineq_machine(rows: int, cols: int) -> AdviceMachine:
    """``LINEQ_rows_cols`` with a kernel vector as advice."""

    problem = get_problem(f"LINEQ_{rows}_{cols}")
    return AdviceMachine(
        f"lineq-oracle:{rows}:{cols}",
        problem.problem_id,
        AdviceScheme(power(REAL, cols), AdviceFamily.COMPOSITE),
        projection_machine(1, 2, REAL_ALPHABET),
        lambda x: SolutionSet(problem, x),
        description="the solution set itself as advice",
    )


def identity_advice_machine(space: SpaceDescriptor, ignored_bit: bool = False) -> AdviceMachine:
    """Identity on ``space`` that ignores its advice."""

    problem_id = f"ID_{space.label().upper()}"
    if ignored_bit:
        scheme = AdviceScheme(TWO, AdviceFamily.DISCRETE_ALL)
        family: Callable[[Name], AdviceSet] = lambda x: DiscreteSet(TWO, (0, 1))  # noqa: E731
        machine_id = f"id-{space.label()}-bit"
    else:
        unit = finite_space(1)
        scheme = AdviceScheme(unit, AdviceFamily.UNIQUE)
        family = lambda x: SingletonSet(constant_name(0, unit.alphabet))  # noqa: E731
        machine_id = f"id-{space.label()}"
    alphabet = space.alphabet.join(scheme.space.alphabet)
    return AdviceMachine(machine_id, problem_id, scheme, projection_machine(0, 2, alphabet), family)


_SIMPLE: Dict[str, Callable[[], AdviceMachine]] = {
    "circle": circle_machine,
    "llpo-finite": llpo_machine,
    "llpo-random": lambda: llpo_machine(random=True),
    "c-nat": lambda: choice_machine("c-nat"),
    "c-nat-geometric": lambda: choice_machine("c-nat-geometric"),
    "pc-cantor": lambda: choice_machine("pc-cantor"),
    "pc-interval": lambda: choice_machine("pc-interval"),
    "pc-real": lambda: choice_machine("pc-real"),
    "id-nat": lambda: identity_advice_machine(NAT),
    "id-cantor": lambda: identity_advice_machine(CANTOR),
    "id-real": lambda: identity_advice_machine(REAL),
    "id-real-bit": lambda: identity_advice_machine(REAL, ignored_bit=True),
}


def advice_machine_ids() -> List[str]:
    return sorted(_SIMPLE) + ["lpo-count:<n>", "lineq-oracle:<n>:<m>"]


def get_advice_machine(machine_id: str) -> AdviceMachine:
    """Look up a shipped advice machine.

    Example:
        >>> get_advice_machine("pc-cantor").scheme.label()
        'advice:random-cantor'
        >>> get_advice_machine("lpo-count:3").problem_id
        'LPO^3'
    """

    key = machine_id.strip()
    if key in _SIMPLE:
        return _SIMPLE[key]()
    head, _, rest = key.partition(":")
    parts = rest.split(":") if rest else []
    if head == "lpo-count" and len(parts) == 1 and parts[0].isdigit():
        return lpo_count_machine(int(parts[0]))
    if head == "lineq-oracle" and len(parts) == 2 and all(p.isdigit() for p in parts):
        return lineq_machine(int(parts[0]), int(parts[1]))
    raise UnknownCatalogEntry(f"unknown advice machine {machine_id!r}; known: {', '.join(advice_machine_ids())}")
