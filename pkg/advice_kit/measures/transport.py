"""
Moving closed sets between Cantor space and the unit interval.

All three maps work on negative information. A closed subset of [0, 1] is
given by open gaps, a closed subset of Cantor space by excluded cylinders, and
each transport machine turns the gaps (or cylinders) it has read so far into
gaps (or cylinders) of the other side. Stages are dovetailed: stage ``s``
reads one source entry and then emits whatever the entries read so far yield
at level ``s``; a stage with nothing to say emits a pad.

``BINARY_PREIMAGE`` pulls a closed subset of [0, 1] back along the binary
expansion map, ``FAT_EMBED`` pushes a closed Cantor set onto the fat Cantor
set, and ``FAT_ADDRESS`` sends a closed subset of [0, 1] to the addresses of
its points on the fat Cantor set. The image of the full Cantor space under
``FAT_EMBED`` is the fat Cantor set itself, not [0, 1].
"""

from __future__ import annotations

import logging
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterator, List, Sequence, Tuple

from ..intervals import Interval
from ..machines.machine import PrefixMachine
from ..machines.tapes import Tape
from ..names import NATURAL
from ..spaces.descriptors import CANTOR, UNIT_INTERVAL, SpaceDescriptor
from ..spaces.sets import (
    ClosedSetName,
    OpenSetName,
    Word,
    decode_interval_word,
    encode_entries,
    interval_word,
    read_entry,
)
from .fatcantor import stage_gap_words, stage_interval

logger = logging.getLogger(__name__)

Cell = Callable[[Tuple[int, ...]], Interval]


class TransportMap(Enum):
    BINARY_PREIMAGE = "binary-preimage"
    FAT_EMBED = "fat-embed"
    FAT_ADDRESS = "fat-address"


def dyadic_cell(word: Sequence[int]) -> Interval:
    """Closed dyadic interval of the binary names extending ``word``.

    Example:
        >>> str(dyadic_cell((1, 0)))
        '[1/2, 3/4]'
    """

    k = 0
    for bit in word:
        k = 2 * k + bit
    scale = Fraction(1, 2 ** len(word))
    return Interval(k * scale, (k + 1) * scale)


def _inside(cell: Interval, gap: Interval) -> bool:
    return gap.lo < cell.lo and cell.hi < gap.hi


def _meets(cell: Interval, gap: Interval) -> bool:
    return cell.lo < gap.hi and cell.hi > gap.lo


def maximal_cells(cell: Cell, gap: Interval, level: int) -> List[Tuple[int, ...]]:
    """Words of length ``level`` whose cell lies in the open ``gap`` while their parent's does not.

    Only cells straddling an end of the gap are refined, so each level looks at
    a bounded number of nodes.

    Example:
        >>> maximal_cells(dyadic_cell, Interval.of(Fraction(1, 2), Fraction(3, 2)), 2)
        [(1, 1)]
    """

    if level == 0:
        return [()] if _inside(cell(()), gap) else []
    frontier: List[Tuple[int, ...]] = [()] if _meets(cell(()), gap) and not _inside(cell(()), gap) else []
    for depth in range(1, level + 1):
        found: List[Tuple[int, ...]] = []
        refined: List[Tuple[int, ...]] = []
        for word in frontier:
            for bit in (0, 1):
                child = word + (bit,)
                box = cell(child)
                if _inside(box, gap):
                    found.append(child)
                elif _meets(box, gap):
                    refined.append(child)
        if depth == level:
            return found
        frontier = refined
    return []


def cell_preimage_program(cell: Cell) -> Callable[[Tape], Iterator[int]]:
    """Program from interval gaps to the maximal cylinders whose cells fit in a gap."""

    def program(tape: Tape) -> Iterator[int]:
        gaps: List[Tuple[Interval, int]] = []
        stage = 0
        while True:
            entry = read_entry(tape)
            if entry is not None:
                centre, radius = decode_interval_word(entry)
                gaps.append((Interval.around(centre, radius), stage))
            words = [w for gap, born in gaps for w in maximal_cells(cell, gap, stage - born)]
            if words:
                yield from encode_entries(words)
            else:
                yield 0
            stage += 1

    return program


def binary_preimage_machine() -> PrefixMachine:
    return PrefixMachine("binary-preimage", cell_preimage_program(dyadic_cell), NATURAL, NATURAL)


def fat_address_closed_machine() -> PrefixMachine:
    return PrefixMachine("fat-address-closed", cell_preimage_program(stage_interval), NATURAL, NATURAL)


def covering_words(word: Word) -> Tuple[Word, Word]:
    """Two interval words whose union is ``I_w`` widened by ``4**-(L+2)`` on each side.

    The margin is smaller than every gap next to ``I_w``, so the union meets
    the fat Cantor set only in ``I_w``.

    Example:
        >>> from advice_kit.spaces.sets import open_intervals
        >>> [str(i) for i in open_intervals(UNIT_INTERVAL, covering_words((1,)))]
        ['[39/64, 55/64]', '[49/64, 65/64]']
    """

    cell = stage_interval(word)
    margin = Fraction(1, 4 ** (len(word) + 2))
    total = cell.width() + 2 * margin
    exponent = 0
    while Fraction(2) ** exponent > total / 2:
        exponent -= 1
    while Fraction(2) ** (exponent + 1) <= total / 2:
        exponent += 1
    radius = Fraction(2) ** exponent
    return (
        interval_word(cell.lo - margin + radius, exponent),
        interval_word(cell.hi + margin - radius, exponent),
    )


def _fat_embed_program(tape: Tape) -> Iterator[int]:
    stage = 0
    while True:
        entry = read_entry(tape)
        words: List[Word] = list(covering_words(entry)) if entry is not None else []
        words.extend(interval_word(centre, -(2 * (stage + 1) + 1)) for centre, _ in stage_gap_words(stage + 1))
        yield from encode_entries(words)
        stage += 1


def fat_embed_closed_machine() -> PrefixMachine:
    return PrefixMachine("fat-embed-closed", _fat_embed_program, NATURAL, NATURAL)


_MACHINES = {
    TransportMap.BINARY_PREIMAGE: (binary_preimage_machine, UNIT_INTERVAL, CANTOR),
    TransportMap.FAT_EMBED: (fat_embed_closed_machine, CANTOR, UNIT_INTERVAL),
    TransportMap.FAT_ADDRESS: (fat_address_closed_machine, UNIT_INTERVAL, CANTOR),
}


def transport_machine(mapping: TransportMap) -> PrefixMachine:
    return _MACHINES[mapping][0]()


def transport_spaces(mapping: TransportMap) -> Tuple[SpaceDescriptor, SpaceDescriptor]:
    _, source, target = _MACHINES[mapping]
    return source, target


def closed_set_transport(s: ClosedSetName, mapping: TransportMap) -> ClosedSetName:
    """Closed set ``mapping(s)``, enumerated lazily from the name of ``s``.

    Example:
        >>> from advice_kit.spaces.sets import closed_set, closed_consistent_at_depth
        >>> upper = closed_set(UNIT_INTERVAL, [interval_word(1, -1)])
        >>> pulled = closed_set_transport(upper, TransportMap.BINARY_PREIMAGE)
        >>> [closed_consistent_at_depth(pulled, w, 8).value for w in [(0, 1), (1, 0, 0, 0), (1, 0, 1)]]
        ['consistent', 'consistent', 'excluded']
    """

    target = transport_spaces(mapping)[1]
    name = transport_machine(mapping).on(s.name)
    return ClosedSetName(target, OpenSetName(target, name))
