"""
Fair bits and advice samplers.

Every trial draws its bits from a counter-based Philox stream keyed by
``(seed, trial)``, so a trial's advice does not depend on which worker runs it
or in which order. Samplers push the fair bits through measure-preserving
decoders: leading 1s for the geometric naturals, runs of 1s for Baire space,
rejection on bit blocks for Finite(k), and the binary-to-signed translation for
the unit interval.
"""

from __future__ import annotations

import logging
from typing import Callable, Iterator

import numpy as np

from ..machines.catalog import block_decoder_machine, leading_ones_machine, repeated_counts_machine
from ..names import BINARY, Name, computed_name, pair_names, untuple_name
from ..spaces.reals import translate_name
from .specs import MeasureKind, MeasureSpec

logger = logging.getLogger(__name__)

CHUNK_BITS = 256


def philox_bits(seed: int, trial: int = 0) -> Callable[[], Iterator[int]]:
    """Factory of the fair bit stream for ``(seed, trial)``; every call restarts it.

    Example:
        >>> from itertools import islice
        >>> factory = philox_bits(42, 7)
        >>> list(islice(factory(), 16)) == list(islice(factory(), 16))
        True
    """

    def factory() -> Iterator[int]:
        generator = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))
        while True:
            for bit in generator.integers(0, 2, size=CHUNK_BITS, dtype=np.uint8):
                yield int(bit)

    return factory


def fair_bits(seed: int, trial: int = 0) -> Name:
    """Cantor name of the trial's fair bits."""

    return computed_name(BINARY, f"philox({seed},{trial})", philox_bits(seed, trial))


def sample_advice(measure: MeasureSpec, bits: Name) -> Name:
    """Advice name distributed by ``measure`` when ``bits`` are fair.

    Args:
        measure: A samplable measure.
        bits: Cantor name used as the random source.
    Returns:
        The decoded advice name; product measures split ``bits`` into its even
        and odd positions.
    Raises:
        ValueError: ``measure`` is not a probability measure.

    Example:
        >>> from advice_kit.names import eventually_periodic
        >>> from advice_kit.measures.specs import NAT_GEOMETRIC
        >>> sample_advice(NAT_GEOMETRIC, eventually_periodic(BINARY, [1, 1], [0])).take(3).symbols
        (2, 2, 2)
    """

    match measure.kind:
        case MeasureKind.CANTOR_UNIFORM:
            return bits
        case MeasureKind.NAT_GEOMETRIC:
            return leading_ones_machine().on(bits)
        case MeasureKind.BAIRE_GEOMETRIC_PRODUCT:
            return repeated_counts_machine().on(bits)
        case MeasureKind.FINITE_UNIFORM:
            assert measure.size is not None
            return block_decoder_machine(measure.size).on(bits)
        case MeasureKind.LEBESGUE_UNIT:
            return translate_name(bits)
        case MeasureKind.PRODUCT:
            assert measure.left is not None and measure.right is not None
            even, odd = untuple_name(bits, 2)
            return pair_names(sample_advice(measure.left, even), sample_advice(measure.right, odd))
        case _:
            raise ValueError(f"{measure.label()} cannot be sampled")


def sample_trial(measure: MeasureSpec, seed: int, trial: int) -> Name:
    return sample_advice(measure, fair_bits(seed, trial))
