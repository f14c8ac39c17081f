"""Names of open and closed subsets.

An open set is named by an infinite enumeration of basic open sets over the
Natural alphabet. Symbol ``0`` is a pad; symbol ``L + 1`` is followed by the
``L`` symbols of one word. Words are cylinder prefixes for Cantor and Baire
space, singletons ``(n,)`` for the naturals, and for the real spaces triples
``(zigzag(num), den, zigzag(r))`` standing for the open interval of radius
``2**r`` around ``num / den``. A closed set is named by a name of its complement.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import islice
from typing import Callable, Iterable, Iterator, List, Sequence, Tuple

from ..errors import MalformedName
from ..intervals import Interval, unzigzag, zigzag
from ..machines.machine import PrefixMachine
from ..machines.tapes import Tape
from ..names import NATURAL, EventuallyPeriodic, Name, computed_name
from .descriptors import CANTOR, INTERVAL_CODED, SpaceDescriptor, SpaceKind
from .reals import REAL_ALPHABET, encode_rational

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
Entry = Word | None
UNIT = Interval.of(0, 1)


class Membership(Enum):
    CONSISTENT = "consistent"
    EXCLUDED = "excluded"


def encode_entries(entries: Iterable[Entry]) -> Tuple[int, ...]:
    """Serialize entries (``None`` is a pad).

    Example:
        >>> encode_entries([(1,), None, (0, 1)])
        (2, 1, 0, 3, 0, 1)
    """

    symbols: List[int] = []
    for entry in entries:
        if entry is None:
            symbols.append(0)
        else:
            symbols.append(len(entry) + 1)
            symbols.extend(entry)
    return tuple(symbols)


def parse_entries(stream: Iterator[int]) -> Iterator[Entry]:
    """Decode an entry stream; ``None`` marks a pad."""

    for head in stream:
        if head == 0:
            yield None
            continue
        yield tuple(next(stream) for _ in range(head - 1))


def read_entry(tape: Tape) -> Entry:
    """Read one entry from a machine tape."""

    head = tape.read()
    if head == 0:
        return None
    return tuple(tape.read() for _ in range(head - 1))


def interval_word(centre: Fraction | int, radius_exponent: int) -> Word:
    """Word for the open interval ``(centre - 2**r, centre + 2**r)``.

    Example:
        >>> interval_word(Fraction(-1, 2), -2)
        (1, 2, 3)
    """

    c = Fraction(centre)
    return (zigzag(c.numerator), c.denominator, zigzag(radius_exponent))


def decode_interval_word(word: Word) -> Tuple[Fraction, Fraction]:
    """Return ``(centre, radius)`` of an interval word."""

    if len(word) != 3 or word[1] == 0:
        raise MalformedName(f"interval word {word} must be (zigzag(num), den>0, zigzag(r))")
    centre = Fraction(unzigzag(word[0]), word[1])
    return centre, Fraction(2) ** unzigzag(word[2])


@dataclass(slots=True, frozen=True)
class OpenSetName:
    """Positive information: an enumeration of basic open subsets of ``space``."""

    space: SpaceDescriptor
    name: Name

    def entries(self) -> Iterator[Entry]:
        return parse_entries(self.name.stream())

    def words(self, depth: int) -> List[Word]:
        """Words among the first ``depth`` entries."""

        return [entry for entry in islice(self.entries(), depth) if entry is not None]

    def describe(self) -> str:
        return f"open({self.space.label()}):{self.name.describe()}"


@dataclass(slots=True, frozen=True)
class ClosedSetName:
    """Negative information: a name of the complement."""

    space: SpaceDescriptor
    complement: OpenSetName

    @property
    def name(self) -> Name:
        return self.complement.name

    def excluded(self, depth: int) -> List[Word]:
        return self.complement.words(depth)

    def describe(self) -> str:
        return f"closed({self.space.label()}):{self.complement.name.describe()}"


def open_set_from_words(space: SpaceDescriptor, words: Sequence[Word]) -> OpenSetName:
    """Open set listing exactly ``words`` and then pads."""

    return OpenSetName(
        space, Name(NATURAL, EventuallyPeriodic(encode_entries(words), (0,)).normalized())
    )


def open_set_from_entries(
    space: SpaceDescriptor, label: str, factory: Callable[[], Iterator[Entry]]
) -> OpenSetName:
    """Open set whose (infinite) entry stream comes from ``factory``."""

    def stream() -> Iterator[int]:
        for entry in factory():
            yield from encode_entries((entry,))

    return OpenSetName(space, computed_name(NATURAL, label, stream))


def closed_set(space: SpaceDescriptor, excluded: Sequence[Word]) -> ClosedSetName:
    """Closed set whose complement is the union of ``excluded``."""

    return ClosedSetName(space, open_set_from_words(space, excluded))


def closed_from_entries(
    space: SpaceDescriptor, label: str, factory: Callable[[], Iterator[Entry]]
) -> ClosedSetName:
    return ClosedSetName(space, open_set_from_entries(space, label, factory))


def full_space(space: SpaceDescriptor) -> ClosedSetName:
    return closed_set(space, ())


def closed_nat_only(values: Iterable[int]) -> ClosedSetName:
    """Closed subset of the naturals equal to ``values``; every other natural is enumerated.

    Example:
        >>> closed_nat_only([3]).excluded(5)
        [(0,), (1,), (2,), (4,), (5,)]
    """

    from .descriptors import NAT

    keep = frozenset(values)
    label = "only{" + ",".join(str(v) for v in sorted(keep)) + "}"

    def factory() -> Iterator[Entry]:
        n = 0
        while True:
            if n not in keep:
                yield (n,)
            n += 1

    return closed_from_entries(NAT, label, factory)


def cylinder_singleton(word: Sequence[int], length: int) -> ClosedSetName:
    """Closed Cantor set of points extending ``word``, given by its complement at ``length``."""

    prefix = tuple(word)
    excluded = [prefix[:i] + (1 - prefix[i],) for i in range(min(length, len(prefix)))]
    return closed_set(CANTOR, excluded)


def cantor_covered(word: Word, excluded: Sequence[Word]) -> bool:
    """Whether the cylinder ``[word]`` lies inside the union of excluded cylinders.

    Example:
        >>> cantor_covered((0,), [(0, 0), (0, 1)])
        True
        >>> cantor_covered((0,), [(0, 0)])
        False
    """

    if any(word[: len(u)] == u for u in excluded):
        return True
    longer = [u for u in excluded if len(u) > len(word) and u[: len(word)] == word]
    if not longer:
        return False
    return cantor_covered(word + (0,), longer) and cantor_covered(word + (1,), longer)


def cantor_remaining_mass(word: Word, excluded: Sequence[Word]) -> Fraction:
    """Uniform measure of ``[word]`` minus the excluded cylinders."""

    if any(word[: len(u)] == u for u in excluded):
        return Fraction(0)
    longer = [u for u in excluded if len(u) > len(word) and u[: len(word)] == word]
    if not longer:
        return Fraction(1, 2 ** len(word))
    return cantor_remaining_mass(word + (0,), longer) + cantor_remaining_mass(word + (1,), longer)


def open_intervals(space: SpaceDescriptor, words: Sequence[Word]) -> List[Interval]:
    """Closures of the open intervals named by interval words (as exact intervals)."""

    result = []
    for word in words:
        centre, radius = decode_interval_word(word)
        result.append(Interval.around(centre, radius))
    return result


def interval_covered(target: Interval, excluded: Sequence[Interval]) -> bool:
    """Whether closed ``target`` lies inside the union of the open ``excluded`` intervals.

    ``excluded`` holds the closures; their endpoints are not covered.

    Example:
        >>> interval_covered(Interval.of(0, 1), [Interval.of(-1, Fraction(1, 2)), Interval.of(Fraction(1, 4), 2)])
        True
        >>> interval_covered(Interval.of(0, 1), [Interval.of(-1, Fraction(1, 2)), Interval.of(Fraction(1, 2), 2)])
        False
    """

    point = target.lo
    while True:
        reach = max((gap.hi for gap in excluded if gap.lo < point < gap.hi), default=None)
        if reach is None:
            return False
        if reach > target.hi:
            return True
        point = reach


def _clip(space: SpaceDescriptor, target: Interval) -> Interval | None:
    if space.kind in (SpaceKind.UNIT_INTERVAL, SpaceKind.UNIT_BINARY):
        return target.intersect(UNIT)
    return target


def interval_consistent_at_depth(c: ClosedSetName, target: Interval, depth: int) -> Membership:
    """Finite-depth membership test of an enclosure against a closed subset of a real space."""

    clipped = _clip(c.space, target)
    if clipped is None:
        return Membership.EXCLUDED
    gaps = open_intervals(c.space, c.excluded(depth))
    return Membership.EXCLUDED if interval_covered(clipped, gaps) else Membership.CONSISTENT


def closed_consistent_at_depth(c: ClosedSetName, word: Word | Interval, depth: int) -> Membership:
    """Whether ``word`` can still extend to a point of ``c`` after ``depth`` entries.

    Args:
        c: Closed set name.
        word: A finite prefix of a point (Cantor, Baire), a singleton ``(n,)``
            (naturals), or an enclosure (real spaces).
        depth: Entries of the complement scanned.
    Returns:
        ``EXCLUDED`` once the scanned entries cover every completion of ``word``.

    Example:
        >>> closed_consistent_at_depth(closed_set(CANTOR, [(1,)]), (1, 0), 4)
        <Membership.EXCLUDED: 'excluded'>
    """

    if c.space.kind in INTERVAL_CODED:
        if not isinstance(word, Interval):
            raise MalformedName(f"{c.space.label()} candidates are enclosures")
        return interval_consistent_at_depth(c, word, depth)
    if isinstance(word, Interval):
        raise MalformedName(f"{c.space.label()} words are symbol tuples")
    excluded = c.excluded(depth)
    match c.space.kind:
        case SpaceKind.CANTOR:
            covered = cantor_covered(tuple(word), excluded)
        case SpaceKind.NAT:
            covered = tuple(word[:1]) in excluded
        case _:
            covered = any(tuple(word[: len(u)]) == u for u in excluded)
    return Membership.EXCLUDED if covered else Membership.CONSISTENT


def remaining_naturals(c: ClosedSetName, depth: int, bound: int) -> List[int]:
    """Naturals below ``bound`` not excluded within ``depth`` entries."""

    excluded = {word[0] for word in c.excluded(depth) if word}
    return [n for n in range(bound) if n not in excluded]


def remaining_intervals(c: ClosedSetName, depth: int, window: Interval) -> List[Interval]:
    """Closed intervals of ``window`` left after removing the excluded open intervals.

    Example:
        >>> from advice_kit.spaces.descriptors import UNIT_INTERVAL
        >>> gaps = closed_set(UNIT_INTERVAL, [interval_word(Fraction(1, 2), -2)])
        >>> [str(i) for i in remaining_intervals(gaps, 4, UNIT)]
        ['[0, 1/4]', '[3/4, 1]']
    """

    clipped = _clip(c.space, window)
    if clipped is None:
        return []
    pieces = [clipped]
    for gap in open_intervals(c.space, c.excluded(depth)):
        next_pieces: List[Interval] = []
        for piece in pieces:
            if gap.hi <= piece.lo or gap.lo >= piece.hi:
                next_pieces.append(piece)
                continue
            if piece.lo <= gap.lo:
                next_pieces.append(Interval(piece.lo, gap.lo))
            if gap.hi <= piece.hi:
                next_pieces.append(Interval(gap.hi, piece.hi))
        pieces = next_pieces
    return sorted(pieces, key=lambda i: i.lo)


def open_choice_machine(space: SpaceDescriptor) -> PrefixMachine:
    """Machine reading an open-set name and writing a point of the set.

    Cantor and Baire: follow strict extensions of the current output, padding
    with 0 once inside a listed cylinder and no extension is known. Naturals:
    the first listed singleton. Real spaces: the centre of the first listed interval.
    """

    if space.kind in INTERVAL_CODED:
        unit = space.kind is not SpaceKind.REAL_SIGNED
        return PrefixMachine(
            f"open-choice:{space.label()}",
            lambda tape: _interval_choice(tape, unit),
            NATURAL,
            REAL_ALPHABET,
        )
    if space.kind is SpaceKind.NAT:
        return PrefixMachine(f"open-choice:{space.label()}", _nat_choice, NATURAL, NATURAL)
    return PrefixMachine(f"open-choice:{space.label()}", _extension_choice, NATURAL, space.alphabet)


def _extension_choice(tape: Tape) -> Iterator[int]:
    current: Word = ()
    seen: List[Word] = []
    while True:
        candidate = next((w for w in seen if len(w) > len(current) and w[: len(current)] == current), None)
        if candidate is not None:
            yield from candidate[len(current):]
            current = candidate
            continue
        inside = any(current[: len(w)] == w for w in seen)
        entry = read_entry(tape)
        if entry is not None:
            seen.append(entry)
        elif inside:
            # [current] lies inside the set
            current += (0,)
            yield 0


def _nat_choice(tape: Tape) -> Iterator[int]:
    while True:
        entry = read_entry(tape)
        if entry:
            break
    value = entry[0]
    yield value
    while True:
        tape.read()
        yield value


def _interval_choice(tape: Tape, unit: bool) -> Iterator[int]:
    while True:
        entry = read_entry(tape)
        if entry is not None:
            break
    centre, _ = decode_interval_word(entry)
    if unit:
        centre = min(max(centre, Fraction(0)), Fraction(1))
    for symbol in encode_rational(centre).stream():
        yield symbol
        tape.read()


def open_choice(u: OpenSetName) -> Name:
    """A point of the (non-empty) open set ``u``, as a generated name."""

    return open_choice_machine(u.space).on(u.name)
