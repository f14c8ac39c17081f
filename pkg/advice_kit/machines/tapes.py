"""Input tapes and step accounting for prefix machines.

One step is one input symbol read, one output symbol emitted, or one unit of
declared internal work. When one machine's output feeds another inside a
composed program, each transferred symbol costs two steps (the producer's write
and the consumer's read). Re-reading a symbol that a split or tee has already
buffered is free.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Deque, Dict, Iterator, List, Sequence, Tuple

from ..errors import FuelExhausted


class InputExhausted(Exception):
    """A program asked for a symbol past the end of a finite prefix."""


@dataclass(slots=True)
class StepCounter:
    """Step budget shared by every tape of one run.

    Example:
        >>> counter = StepCounter(fuel=2)
        >>> counter.charge(); counter.charge(); counter.steps
        2
    """

    fuel: int
    steps: int = 0
    annotations: Dict[str, object] = field(default_factory=dict)

    def charge(self, amount: int = 1) -> None:
        self.steps += amount
        if self.steps > self.fuel:
            raise FuelExhausted(self.steps)


class Tape:
    """Read side of a machine's input."""

    def __init__(self, counter: StepCounter) -> None:
        self.counter = counter

    def read(self) -> int:
        raise NotImplementedError

    def tick(self, amount: int = 1) -> None:
        """Spend ``amount`` steps of internal work."""

        self.counter.charge(amount)

    def annotate(self, key: str, value: object) -> None:
        """Attach a value to the run trace (e.g. rounds used by a witness)."""

        self.counter.annotations[key] = value


class PrefixTape(Tape):
    """Finite input; reading past the end raises :class:`InputExhausted`."""

    def __init__(self, symbols: Sequence[int], counter: StepCounter) -> None:
        super().__init__(counter)
        self._symbols = tuple(symbols)
        self._position = 0

    def read(self) -> int:
        if self._position >= len(self._symbols):
            raise InputExhausted(self._position)
        self.counter.charge()
        symbol = self._symbols[self._position]
        self._position += 1
        return symbol

    @property
    def consumed(self) -> int:
        return self._position


class StreamTape(Tape):
    """Input drawn lazily from an infinite symbol iterator."""

    def __init__(self, symbols: Iterator[int], counter: StepCounter) -> None:
        super().__init__(counter)
        self._symbols = symbols

    def read(self) -> int:
        self.counter.charge()
        try:
            return next(self._symbols)
        except StopIteration as exc:
            raise InputExhausted("input stream ended") from exc


class PipeTape(Tape):
    """Input produced by another program running on the same counter."""

    def __init__(self, producer: Iterator[int], counter: StepCounter) -> None:
        super().__init__(counter)
        self._producer = producer

    def read(self) -> int:
        try:
            symbol = next(self._producer)
        except StopIteration as exc:
            raise InputExhausted("producer stopped") from exc
        self.counter.charge(2)
        return symbol


class InterleaveTape(Tape):
    """Presents ``<c0, c1, ...>`` by reading the channels in rotation."""

    def __init__(self, channels: Sequence[Tape], counter: StepCounter) -> None:
        super().__init__(counter)
        self._channels = list(channels)
        self._turn = 0

    def read(self) -> int:
        channel = self._channels[self._turn]
        symbol = channel.read()
        self._turn = (self._turn + 1) % len(self._channels)
        return symbol


class SplitTape:
    """Splits an interleaved base tape into ``arity`` component channels.

    Example:
        >>> counter = StepCounter(fuel=100)
        >>> split = SplitTape(PrefixTape([0, 1, 0, 1], counter), 2)
        >>> right = split.channel(1)
        >>> right.read(), right.read(), counter.steps
        (1, 1, 4)
    """

    def __init__(self, base: Tape, arity: int) -> None:
        if arity < 1:
            raise ValueError("arity must be positive")
        self._base = base
        self._arity = arity
        self._buffers: List[Deque[int]] = [deque() for _ in range(arity)]
        self._position = 0

    def _fill(self, index: int) -> None:
        while not self._buffers[index]:
            symbol = self._base.read()
            self._buffers[self._position % self._arity].append(symbol)
            self._position += 1

    def channel(self, index: int) -> "ChannelTape":
        return ChannelTape(self, index, self._base.counter)

    def channels(self) -> Tuple["ChannelTape", ...]:
        return tuple(self.channel(j) for j in range(self._arity))


class ChannelTape(Tape):
    def __init__(self, split: SplitTape, index: int, counter: StepCounter) -> None:
        super().__init__(counter)
        self._split = split
        self._index = index

    def read(self) -> int:
        self._split._fill(self._index)
        return self._split._buffers[self._index].popleft()


class TeeTape:
    """Hands out independent read cursors over one base tape."""

    def __init__(self, base: Tape) -> None:
        self._base = base
        self._seen: List[int] = []

    def branch(self) -> "BranchTape":
        return BranchTape(self, self._base.counter)

    def branches(self, count: int) -> Tuple["BranchTape", ...]:
        return tuple(self.branch() for _ in range(count))

    def _symbol(self, index: int) -> int:
        while len(self._seen) <= index:
            self._seen.append(self._base.read())
        return self._seen[index]


class BranchTape(Tape):
    def __init__(self, tee: TeeTape, counter: StepCounter) -> None:
        super().__init__(counter)
        self._tee = tee
        self._position = 0

    def read(self) -> int:
        symbol = self._tee._symbol(self._position)
        self._position += 1
        return symbol
