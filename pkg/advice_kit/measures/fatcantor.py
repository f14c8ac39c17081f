"""
The fat Cantor set and its coordinate maps.

Stage 0 is ``[0, 1]``. Stage ``j >= 1`` removes the centred open interval of
length ``4**-j`` from each of the ``2**(j-1)`` intervals of stage ``j - 1``.
The limit set has measure 1/2 and every point has a unique address in Cantor
space: bit ``j`` says whether the point lies in the left or right child at
stage ``j + 1``. ``fat_embed_machine`` turns an address into the point and
``fat_address_machine`` reads the point back into its address.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

from ..intervals import Interval
from ..machines.machine import PrefixMachine
from ..machines.tapes import Tape
from ..names import BINARY, Name
from ..spaces.reals import REAL_ALPHABET, RealReader, prefix_enclosure_machine

FULL = Interval.of(0, 1)


def gap_radius(stage: int) -> Fraction:
    """Half the length ``4**-stage`` of the gaps opened at ``stage >= 1``."""

    return Fraction(1, 2 ** (2 * stage + 1))


def stage_interval(word: Sequence[int]) -> Interval:
    """Interval ``I_w`` of stage ``len(word)`` reached by following ``word``.

    Example:
        >>> str(stage_interval((0,))), str(stage_interval((1, 1)))
        ('[0, 3/8]', '[27/32, 1]')
    """

    lo, hi = Fraction(0), Fraction(1)
    for stage, bit in enumerate(word, start=1):
        mid = (lo + hi) / 2
        if bit == 0:
            hi = mid - gap_radius(stage)
        else:
            lo = mid + gap_radius(stage)
    return Interval(lo, hi)


def stage_width(level: int) -> Fraction:
    """Common width ``2**(-L-1) + 2**(-2L-1)`` of the stage-``L`` intervals."""

    return Fraction(1, 2 ** (level + 1)) + Fraction(1, 2 ** (2 * level + 1))


def measure_at_depth(depth: int) -> Fraction:
    """Exact measure ``1/2 + 2**(-d-1)`` of the stage-``d`` approximation."""

    return Fraction(1, 2) + Fraction(1, 2 ** (depth + 1))


def embedded_cylinder_measure(word: Sequence[int]) -> Fraction:
    """Lebesgue measure of the points of the limit set with address in ``[word]``.

    Later stages remove ``2**(j-L-1)`` gaps of length ``4**-j`` from ``I_w``
    for every ``j > L``, which leaves ``2**(-L-1)``.

    Example:
        >>> embedded_cylinder_measure((0,))
        Fraction(1, 4)
    """

    level = len(word)
    return stage_interval(word).width() - Fraction(1, 2 ** (2 * level + 1))


@dataclass(slots=True, frozen=True)
class FatCantorSet:
    """Stage-``depth`` approximation, intervals in address order.

    Example:
        >>> stage = build_fat_cantor(1)
        >>> [str(i) for i in stage.intervals], stage.measure
        (['[0, 3/8]', '[5/8, 1]'], Fraction(3, 4))
    """

    depth: int
    intervals: Tuple[Interval, ...]

    @property
    def measure(self) -> Fraction:
        return sum((i.width() for i in self.intervals), Fraction(0))

    def contains(self, point: Fraction) -> bool:
        return any(i.contains(point) for i in self.intervals)

    def locate(self, point: Fraction) -> Tuple[int, ...] | None:
        """Address of the stage interval containing ``point``, if any."""

        for index, interval in enumerate(self.intervals):
            if interval.contains(point):
                return tuple((index >> (self.depth - 1 - j)) & 1 for j in range(self.depth))
        return None

    def gaps(self) -> List[Interval]:
        """Closures of the open gaps between consecutive intervals."""

        return [Interval(a.hi, b.lo) for a, b in zip(self.intervals, self.intervals[1:])]


def build_fat_cantor(depth: int) -> FatCantorSet:
    if depth < 0:
        raise ValueError("depth must be non-negative")
    pieces = [FULL]
    for stage in range(1, depth + 1):
        radius = gap_radius(stage)
        pieces = [
            child
            for piece in pieces
            for child in (Interval(piece.lo, piece.mid() - radius), Interval(piece.mid() + radius, piece.hi))
        ]
    return FatCantorSet(depth, tuple(pieces))


def stage_gap_words(stage: int) -> Iterator[Tuple[Fraction, Fraction]]:
    """``(centre, radius)`` of the gaps opened at ``stage``."""

    radius = gap_radius(stage)
    for index in range(2 ** (stage - 1)):
        word = tuple((index >> (stage - 2 - j)) & 1 for j in range(stage - 1))
        yield stage_interval(word).mid(), radius


def fat_embed_machine() -> PrefixMachine:
    """Cantor address to the signed-digit name of its point."""

    return prefix_enclosure_machine("fat-embed", stage_interval, BINARY, exponent=0)


def fat_embed_name(address: Name) -> Name:
    """Point of the fat Cantor set with the given address.

    Example:
        >>> from advice_kit.names import constant_name
        >>> from advice_kit.spaces.reals import real_enclosure
        >>> real_enclosure(fat_embed_name(constant_name(1, BINARY)), 12).contains(1)
        True
    """

    return fat_embed_machine().on(address)


def _forward_program(tape: Tape) -> Iterator[int]:
    reader = RealReader()
    while not reader.header_done:
        reader.feed(tape.read())
    word: Tuple[int, ...] = ()
    while True:
        left = stage_interval(word + (0,))
        right = stage_interval(word + (1,))
        while True:
            enclosure = reader.interval()
            if enclosure.hi < right.lo:
                bit = 0
                break
            if enclosure.lo > left.hi:
                bit = 1
                break
            reader.feed(tape.read())
        word += (bit,)
        yield bit


def fat_address_machine() -> PrefixMachine:
    """Real name of a point of the fat Cantor set to its address.

    Points in a gap never settle, so the machine reads forever on them.

    Example:
        >>> from advice_kit.spaces.reals import encode_rational
        >>> fat_address_machine().on(encode_rational(1)).take(4).symbols
        (1, 1, 1, 1)
    """

    return PrefixMachine("fat-address", _forward_program, REAL_ALPHABET, BINARY)
