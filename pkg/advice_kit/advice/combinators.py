"""
Building advice machines from other advice machines and from reductions.

* ``compose_advice_machines``: ``f`` with ``(Z1, A)`` and ``g`` with ``(Z2, B)``
  give ``f ∘ g`` with ``Z1 x Z2`` advice, provided ``Z2`` names its points
  uniquely.
* ``product_advice_machines``: products and tagged coproducts.
* ``change_advice_space``: move advice along a computable surjection.
* ``transport_advice_along_reduction``: ``f <= g`` and ``g`` with advice give
  ``f`` with the same advice space.
* ``effective_advice_to_choice`` / ``choice_to_effective_advice``: effective
  closed advice is the same thing as a reduction to closed choice.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Callable, Iterator

from ..errors import SchemeMismatch
from ..machines.machine import PrefixMachine, compose_machines
from ..machines.tapes import InterleaveTape, PipeTape, SplitTape, Tape
from ..machines.wiring import cross_machine, sandwich_machine
from ..names import Name, drop_name, pair_names, unpair_name
from ..problems.catalog import COMPOSE
from ..problems.oracles import closed_of
from ..reductions.witness import ReductionWitness
from ..spaces.descriptors import SpaceKind, coproduct, product
from .machine import AdviceMachine
from .schemes import AdviceFamily, AdviceScheme, product_scheme
from .sets import AdviceSet, ClosedAdviceSet, CompositionSet, ProductSet, PullbackSet, TaggedSet

logger = logging.getLogger(__name__)

_CHOICE_TARGETS = {SpaceKind.NAT: "C_NAT", SpaceKind.CANTOR: "C_CANTOR"}


class ProductMode(Enum):
    PRODUCT = "product"
    COPRODUCT = "coproduct"


class Direction(Enum):
    TO_REDUCTION = "to-reduction"
    FROM_REDUCTION = "from-reduction"


def compose_advice_machines(fm: AdviceMachine, gm: AdviceMachine) -> AdviceMachine:
    """Advice machine for ``f ∘ g``; advice names are ``<z, y>`` with ``z`` for ``f``.

    The core computes ``F<G<w, y>, z>`` on ``<w, <z, y>>``.

    Raises:
        SchemeMismatch: ``g``'s advice space has points with several names.
    """

    if not gm.scheme.space.injective:
        raise SchemeMismatch(f"{gm.machine_id} takes advice in {gm.scheme.space.label()}, which is not injective")
    inner, outer = gm.core, fm.core

    def program(tape: Tape) -> Iterator[int]:
        w_channel, advice = SplitTape(tape, 2).channels()
        z_channel, y_channel = SplitTape(advice, 2).channels()
        g_out = PipeTape(inner.program(InterleaveTape((w_channel, y_channel), tape.counter)), tape.counter)
        return outer.program(InterleaveTape((g_out, z_channel), tape.counter))

    def middle(w: Name, y: Name) -> Name:
        # an identity's input names its own answer and keeps its finite description
        if gm.problem_id.startswith("ID_"):
            return w
        return inner.on(pair_names(w, y))

    def family(w: Name) -> AdviceSet:
        return CompositionSet(gm.advice_set(w), lambda y: fm.advice_set(middle(w, y)))

    core = PrefixMachine(
        f"{outer.machine_id}{COMPOSE}{inner.machine_id}",
        program,
        inner.input_alphabet.join(fm.scheme.space.alphabet),
        outer.output_alphabet,
    )
    return AdviceMachine(
        f"{fm.machine_id}{COMPOSE}{gm.machine_id}",
        f"{fm.problem_id}{COMPOSE}{gm.problem_id}",
        AdviceScheme(product(fm.scheme.space, gm.scheme.space), AdviceFamily.COMPOSITE),
        core,
        family,
        description=f"{fm.machine_id} after {gm.machine_id}",
    )


def _product(fm: AdviceMachine, gm: AdviceMachine) -> AdviceMachine:
    def family(x: Name) -> AdviceSet:
        left, right = unpair_name(x)
        return ProductSet(fm.advice_set(left), gm.advice_set(right))

    return AdviceMachine(
        f"{fm.machine_id}x{gm.machine_id}",
        f"{fm.problem_id}x{gm.problem_id}",
        product_scheme(fm.scheme, gm.scheme),
        cross_machine([fm.core, gm.core]),
        family,
        description=f"{fm.machine_id} and {gm.machine_id} side by side",
    )


def _coproduct(fm: AdviceMachine, gm: AdviceMachine) -> AdviceMachine:
    sides = (fm, gm)

    def program(tape: Tape) -> Iterator[int]:
        x_channel, w_channel = SplitTape(tape, 2).channels()
        tag = x_channel.read()
        w_channel.read()
        if tag not in (0, 1):
            return
        yield tag
        yield from sides[tag].core.program(InterleaveTape((x_channel, w_channel), tape.counter))

    def family(x: Name) -> AdviceSet:
        tag = x.symbol(0)
        return TaggedSet(tag, sides[tag].advice_set(drop_name(x, 1)))

    core = PrefixMachine(
        f"{fm.core.machine_id}+{gm.core.machine_id}",
        program,
        fm.core.input_alphabet.join(gm.core.input_alphabet),
        fm.core.output_alphabet.join(gm.core.output_alphabet),
    )
    return AdviceMachine(
        f"{fm.machine_id}+{gm.machine_id}",
        f"{fm.problem_id}+{gm.problem_id}",
        AdviceScheme(coproduct(fm.scheme.space, gm.scheme.space), AdviceFamily.COMPOSITE),
        core,
        family,
        description=f"{fm.machine_id} or {gm.machine_id} by the instance tag",
    )


def product_advice_machines(fm: AdviceMachine, gm: AdviceMachine, mode: ProductMode = ProductMode.PRODUCT) -> AdviceMachine:
    """``f x g`` on paired instances and advice, or ``f + g`` dispatched on the tag."""

    if mode is ProductMode.PRODUCT:
        return _product(fm, gm)
    return _coproduct(fm, gm)


def change_advice_space(
    am: AdviceMachine,
    iota: PrefixMachine,
    scheme: AdviceScheme,
    lift: Callable[[Name], Name],
) -> AdviceMachine:
    """Take advice in ``scheme.space`` and push it through ``iota`` before use.

    Args:
        am: Machine with advice in ``iota``'s target space.
        iota: Realizer of a computable surjection onto ``am``'s advice space.
        scheme: Scheme of the new advice space.
        lift: Maps a member of ``A_x`` to one of its ``iota``-preimages.
    """

    core = am.core

    def program(tape: Tape) -> Iterator[int]:
        x_channel, y_channel = SplitTape(tape, 2).channels()
        pushed = PipeTape(iota.program(y_channel), tape.counter)
        return core.program(InterleaveTape((x_channel, pushed), tape.counter))

    def family(x: Name) -> AdviceSet:
        return PullbackSet(am.advice_set(x), iota, lift)

    return AdviceMachine(
        f"{am.machine_id}@{iota.machine_id}",
        am.problem_id,
        scheme,
        PrefixMachine(f"{core.machine_id}<id, {iota.machine_id}>", program, core.input_alphabet.join(iota.input_alphabet), core.output_alphabet),
        family,
        description=f"{am.machine_id} with advice read through {iota.machine_id}",
    )


def transport_advice_along_reduction(witness: ReductionWitness, gm: AdviceMachine) -> AdviceMachine:
    """``f <= g`` and advice for ``g`` give advice for ``f``.

    The core is ``H<x, y> = F<x, G<K x, y>>`` and the advice sets are
    ``A_{K x}``; an advice map for ``g`` is precomposed with ``K``.
    """

    pre = witness.pre
    advice_map = compose_machines(gm.advice_map, pre) if gm.advice_map is not None else None
    return AdviceMachine(
        f"{gm.machine_id}/{witness.witness_id}",
        witness.source,
        gm.scheme,
        sandwich_machine(witness.post, gm.core, pre, f"H[{witness.witness_id}, {gm.core.machine_id}]"),
        lambda x: gm.advice_set(pre.on(x)),
        advice_map,
        f"{witness.source} through {witness.witness_id} and {gm.machine_id}",
    )


def effective_advice_to_choice(am: AdviceMachine) -> ReductionWitness:
    """Reduction of ``f`` to closed choice on the advice space.

    ``pre`` is the advice map and ``post`` the core: the choice answer is a
    point of ``A(x)``, which is exactly what the core needs.
    """

    if am.advice_map is None or not am.scheme.effective:
        raise SchemeMismatch(f"{am.machine_id} does not take effective advice")
    kind = am.scheme.space.kind
    if kind not in _CHOICE_TARGETS:
        raise SchemeMismatch(f"no closed choice problem on {am.scheme.space.label()}")
    return ReductionWitness(
        f"choice:{am.machine_id}",
        am.problem_id,
        _CHOICE_TARGETS[kind],
        am.advice_map,
        am.core,
        f"{am.problem_id} <= {_CHOICE_TARGETS[kind]} from effective advice",
    )


def choice_to_effective_advice(witness: ReductionWitness) -> AdviceMachine:
    """Advice machine with ``A(x) = K x`` and core ``F``."""

    problem = witness.target_problem
    if problem.output_space.kind not in _CHOICE_TARGETS or problem.input_space.kind is not SpaceKind.CLOSED:
        raise SchemeMismatch(f"{witness.witness_id} does not reduce to closed choice")
    scheme = AdviceScheme(problem.output_space, AdviceFamily.EFFECTIVE_CLOSED)
    pre = witness.pre

    def family(x: Name) -> AdviceSet:
        return ClosedAdviceSet(closed_of(scheme.space, pre.on(x)))

    return AdviceMachine(
        f"advice:{witness.witness_id}",
        witness.source,
        scheme,
        witness.post,
        family,
        pre,
        f"{witness.source} with advice from {witness.target}",
    )


def effective_advice_to_choice_reduction(
    item: AdviceMachine | ReductionWitness, direction: Direction
) -> ReductionWitness | AdviceMachine:
    """Dispatch between the two directions of the equivalence."""

    if direction is Direction.TO_REDUCTION:
        if not isinstance(item, AdviceMachine):
            raise SchemeMismatch("TO_REDUCTION expects an advice machine")
        return effective_advice_to_choice(item)
    if not isinstance(item, ReductionWitness):
        raise SchemeMismatch("FROM_REDUCTION expects a reduction witness")
    return choice_to_effective_advice(item)
