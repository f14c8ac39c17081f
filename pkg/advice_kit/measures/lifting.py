"""
Moving random advice between spaces.

Random advice over the naturals, Baire space or a finite set becomes random
Cantor advice by decoding fair bits the way the samplers do. Random advice
over the unit interval and over Cantor space are interchangeable: binary
expansions carry Cantor points onto the interval, and the fat Cantor set
carries interval points back.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Tuple

from ..advice.combinators import change_advice_space
from ..advice.machine import AdviceMachine
from ..advice.schemes import AdviceFamily, AdviceScheme
from ..constants import ORACLE_PRECISION
from ..errors import SchemeMismatch
from ..machines.catalog import block_decoder_machine, leading_ones_machine, repeated_counts_machine
from ..machines.machine import PrefixMachine
from ..names import BINARY, Name, computed_name, eventually_periodic
from ..spaces.reals import exact_value, real_enclosure, translate_binary_to_signed_machine
from .fatcantor import fat_address_machine, fat_embed_name
from .specs import CANTOR_UNIFORM, LEBESGUE_UNIT, MeasureKind

logger = logging.getLogger(__name__)

CANTOR_RANDOM = AdviceScheme(CANTOR_UNIFORM.space, AdviceFamily.RANDOM_POSITIVE, CANTOR_UNIFORM)
INTERVAL_RANDOM = AdviceScheme(LEBESGUE_UNIT.space, AdviceFamily.RANDOM_POSITIVE, LEBESGUE_UNIT)


def binary_expansion(value: Fraction) -> Name:
    """Eventually periodic binary expansion of a rational in ``[0, 1]``.

    Example:
        >>> binary_expansion(Fraction(1, 3)).take(6).symbols
        (0, 1, 0, 1, 0, 1)
        >>> binary_expansion(Fraction(1)).take(3).symbols
        (1, 1, 1)
    """

    if not 0 <= value <= 1:
        raise ValueError(f"{value} lies outside [0, 1]")
    if value == 1:
        return eventually_periodic(BINARY, [], [1])
    digits: List[int] = []
    seen: Dict[int, int] = {}
    remainder, den = value.numerator, value.denominator
    while remainder not in seen:
        seen[remainder] = len(digits)
        remainder *= 2
        digits.append(remainder // den)
        remainder %= den
    start = seen[remainder]
    return eventually_periodic(BINARY, digits[:start], digits[start:])


def _lift_nat(w: Name) -> Name:
    return eventually_periodic(BINARY, [1] * w.symbol(0) + [0], [0])


def _lift_baire(w: Name) -> Name:
    source = w.periodic
    if source is not None:
        def runs(values: Tuple[int, ...]) -> List[int]:
            return [bit for n in values for bit in [1] * n + [0]]

        return eventually_periodic(BINARY, runs(source.prefix), runs(source.period))

    def factory() -> Iterator[int]:
        for n in w.stream():
            yield from [1] * n
            yield 0

    return computed_name(BINARY, f"runs({w.describe()})", factory)


def _lift_finite(size: int) -> Callable[[Name], Name]:
    width = max(1, (size - 1).bit_length())

    def lift(w: Name) -> Name:
        value = w.symbol(0)
        return eventually_periodic(BINARY, [(value >> (width - 1 - j)) & 1 for j in range(width)], [0])

    return lift


def lift_random_advice_to_cantor(am: AdviceMachine) -> AdviceMachine:
    """Random advice over the naturals, Baire space or Finite(k) as random Cantor advice.

    Example:
        >>> from advice_kit.advice.catalog import get_advice_machine
        >>> lifted = lift_random_advice_to_cantor(get_advice_machine("c-nat-geometric"))
        >>> lifted.scheme.label(), lifted.problem_id
        ('advice:random-cantor', 'C_NAT')
    """

    measure = am.scheme.measure
    if not am.scheme.random or measure is None:
        raise SchemeMismatch(f"{am.machine_id} does not take random advice")
    decoder: PrefixMachine
    match measure.kind:
        case MeasureKind.NAT_GEOMETRIC:
            decoder, lift = leading_ones_machine(), _lift_nat
        case MeasureKind.BAIRE_GEOMETRIC_PRODUCT:
            decoder, lift = repeated_counts_machine(), _lift_baire
        case MeasureKind.FINITE_UNIFORM:
            assert measure.size is not None
            decoder, lift = block_decoder_machine(measure.size), _lift_finite(measure.size)
        case _:
            raise SchemeMismatch(f"no Cantor decoder for {measure.label()} advice")
    logger.debug("lifting %s through %s", am.machine_id, decoder.machine_id)
    return change_advice_space(am, decoder, CANTOR_RANDOM, lift)


def _interval_lift(w: Name) -> Name:
    if w.periodic is not None:
        value = exact_value(w)
    else:
        logger.debug("approximating non-periodic advice %s", w.describe())
        value = real_enclosure(w, ORACLE_PRECISION).mid()
    return binary_expansion(min(max(value, Fraction(0)), Fraction(1)))


def interval_advice_to_cantor(am: AdviceMachine) -> AdviceMachine:
    """Random unit-interval advice as random Cantor advice, read through binary expansions."""

    if am.scheme.measure is None or am.scheme.measure.kind is not MeasureKind.LEBESGUE_UNIT:
        raise SchemeMismatch(f"{am.machine_id} does not take random advice in the unit interval")
    return change_advice_space(am, translate_binary_to_signed_machine(), CANTOR_RANDOM, _interval_lift)


def cantor_advice_to_interval(am: AdviceMachine) -> AdviceMachine:
    """Random Cantor advice as random unit-interval advice, read through the fat Cantor set.

    Interval advice outside the fat Cantor set never yields a Cantor point,
    so the success probability halves.
    """

    if am.scheme.measure is None or am.scheme.measure.kind is not MeasureKind.CANTOR_UNIFORM:
        raise SchemeMismatch(f"{am.machine_id} does not take random Cantor advice")
    return change_advice_space(am, fat_address_machine(), INTERVAL_RANDOM, fat_embed_name)
