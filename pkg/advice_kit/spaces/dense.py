"""Dense sequences and the search for a dense point inside an open set."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Tuple

from ..constants import SCAN_DEPTH
from ..intervals import unzigzag
from ..machines.machine import Diverged
from ..names import NATURAL, Prefix
from .descriptors import CANTOR, INTERVAL_CODED, NAT, REAL, UNIT_INTERVAL, SpaceDescriptor, SpaceKind
from .sets import OpenSetName, Word, decode_interval_word

Point = Fraction | Tuple[int, ...] | int


@dataclass(slots=True, frozen=True)
class DenseSequence:
    """Enumeration ``n -> point`` with dense image.

    Points are rationals for the real spaces, words ``w`` standing for
    ``w 0^ω`` in Cantor space, and naturals for ``NAT``.
    """

    space: SpaceDescriptor
    label: str
    point: Callable[[int], Point]

    def take(self, count: int) -> List[Point]:
        return [self.point(n) for n in range(count)]


def _dyadic_unit(n: int) -> Fraction:
    if n < 2:
        return Fraction(n)
    m = n - 1
    level = m.bit_length()
    offset = m - 2 ** (level - 1)
    return Fraction(2 * offset + 1, 2**level)


def _unpair(n: int) -> Tuple[int, int]:
    """Inverse Cantor pairing."""

    w = 0
    while (w + 1) * (w + 2) // 2 <= n:
        w += 1
    b = n - w * (w + 1) // 2
    return w - b, b


def _dyadic_real(n: int) -> Fraction:
    numerator, exponent = _unpair(n)
    return Fraction(unzigzag(numerator), 2**exponent)


def _shortlex_word(n: int) -> Tuple[int, ...]:
    length = (n + 1).bit_length() - 1
    index = n + 1 - 2**length
    return tuple((index >> (length - 1 - i)) & 1 for i in range(length))


def dyadic_unit_sequence() -> DenseSequence:
    """``0, 1, 1/2, 1/4, 3/4, 1/8, 3/8, ...``

    Example:
        >>> [str(q) for q in dyadic_unit_sequence().take(6)]
        ['0', '1', '1/2', '1/4', '3/4', '1/8']
    """

    return DenseSequence(UNIT_INTERVAL, "dyadic-unit", _dyadic_unit)


def dyadic_real_sequence() -> DenseSequence:
    return DenseSequence(REAL, "dyadic-real", _dyadic_real)


def cantor_sequence() -> DenseSequence:
    """Eventually zero points in shortlex order of their words.

    Example:
        >>> cantor_sequence().take(4)
        [(), (0,), (1,), (0, 0)]
    """

    return DenseSequence(CANTOR, "shortlex", _shortlex_word)


def naturals_sequence() -> DenseSequence:
    return DenseSequence(NAT, "naturals", lambda n: n)


def point_in_word(space: SpaceDescriptor, point: Point, word: Word) -> bool:
    """Whether a dense point provably lies in the basic open set ``word``."""

    if space.kind in INTERVAL_CODED:
        centre, radius = decode_interval_word(word)
        return abs(Fraction(point) - centre) < radius  # type: ignore[arg-type]
    if space.kind is SpaceKind.NAT:
        return word == (point,)
    assert isinstance(point, tuple)
    padded = point + (0,) * max(0, len(word) - len(point))
    return padded[: len(word)] == word


def dense_witness(u: OpenSetName, nu: DenseSequence, max_stages: int = SCAN_DEPTH) -> int | Diverged:
    """Least index ``n`` whose point ``nu(n)`` lies in a listed basic set.

    Stage ``s`` reads entry ``s`` and tests ``nu(0..s)`` against every word read
    so far, so the answer is the least index found at the earliest stage.

    Args:
        u: Open set name.
        nu: Dense sequence of the same space.
        max_stages: Stages before giving up with ``Diverged``.
    Returns:
        The index, or ``Diverged`` for an (apparently) empty set.

    Example:
        >>> from advice_kit.spaces.sets import interval_word, open_set_from_words
        >>> ball = open_set_from_words(UNIT_INTERVAL, [interval_word(Fraction(1, 2), -2)])
        >>> dense_witness(ball, dyadic_unit_sequence())
        2
    """

    words: List[Word] = []
    entries = u.entries()
    for stage in range(max_stages):
        entry = next(entries)
        if entry is not None:
            words.append(entry)
        for n in range(stage + 1):
            point = nu.point(n)
            if any(point_in_word(u.space, point, w) for w in words):
                return n
    return Diverged(max_stages, Prefix(NATURAL, ()))
