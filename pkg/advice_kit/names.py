"""Alphabets, finite prefixes, and finitely described infinite names.

A name is an infinite symbol sequence. Every name in the package has a finite
description: an eventually periodic literal, the output of a prefix machine on
another name, an interleaving of names, or (for harness-side values such as
random bits and oracle answers) a labelled generator factory.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import islice
from math import ceil, lcm
from threading import Lock
from typing import TYPE_CHECKING, Callable, Iterable, Iterator, List, Sequence, Tuple

from .constants import DEFAULT_FUEL
from .errors import AlphabetMismatch, MalformedName

if TYPE_CHECKING:
    from .machines.machine import PrefixMachine


class AlphabetKind(Enum):
    BINARY = "bin"
    NATURAL = "nat"
    FINITE = "finite"


@dataclass(slots=True, frozen=True)
class Alphabet:
    """Symbol alphabet of a name.

    Attributes:
        kind: Binary, Natural, or Finite.
        size: Number of symbols for Binary (2) and Finite(k); None for Natural.

    Example:
        >>> Alphabet.binary().join(Alphabet.finite(3)).label()
        'finite3'
    """

    kind: AlphabetKind
    size: int | None = None

    def __post_init__(self) -> None:
        if self.kind is AlphabetKind.BINARY and self.size != 2:
            raise MalformedName("binary alphabet has exactly two symbols")
        if self.kind is AlphabetKind.FINITE and (self.size is None or self.size < 1):
            raise MalformedName(f"Finite(k) requires k >= 1, got {self.size}")
        if self.kind is AlphabetKind.NATURAL and self.size is not None:
            raise MalformedName("natural alphabet is unbounded")

    @classmethod
    def binary(cls) -> "Alphabet":
        return cls(AlphabetKind.BINARY, 2)

    @classmethod
    def natural(cls) -> "Alphabet":
        return cls(AlphabetKind.NATURAL)

    @classmethod
    def finite(cls, size: int) -> "Alphabet":
        if size == 2:
            return cls.binary()
        return cls(AlphabetKind.FINITE, size)

    def contains(self, symbol: int) -> bool:
        if symbol < 0:
            return False
        return self.size is None or symbol < self.size

    def check(self, symbols: Iterable[int]) -> Tuple[int, ...]:
        """Return the symbols as a tuple, raising MalformedName on a stray symbol."""

        result = tuple(symbols)
        for symbol in result:
            if not isinstance(symbol, int) or not self.contains(symbol):
                raise MalformedName(f"symbol {symbol!r} is outside alphabet {self.label()}")
        return result

    def join(self, other: "Alphabet") -> "Alphabet":
        """Smallest alphabet containing both alphabets."""

        if self == other:
            return self
        if self.size is None or other.size is None:
            return Alphabet.natural()
        return Alphabet.finite(max(self.size, other.size))

    def subsumes(self, other: "Alphabet") -> bool:
        return self.size is None or (other.size is not None and other.size <= self.size)

    def label(self) -> str:
        if self.kind is AlphabetKind.FINITE:
            return f"finite{self.size}"
        return self.kind.value


BINARY = Alphabet.binary()
NATURAL = Alphabet.natural()


@dataclass(slots=True, frozen=True)
class Prefix:
    """Finite stage of a name.

    Example:
        >>> Prefix(BINARY, (0, 1)).is_prefix_of(Prefix(BINARY, (0, 1, 1)))
        True
    """

    alphabet: Alphabet
    symbols: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, index: int) -> int:
        return self.symbols[index]

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def is_prefix_of(self, other: "Prefix") -> bool:
        return other.symbols[: len(self.symbols)] == self.symbols

    def extends(self, other: "Prefix") -> bool:
        return other.is_prefix_of(self)

    def take(self, length: int) -> "Prefix":
        return Prefix(self.alphabet, self.symbols[:length])

    def render(self) -> str:
        return ",".join(str(symbol) for symbol in self.symbols)


def make_prefix(symbols: Iterable[int], alphabet: Alphabet = BINARY) -> Prefix:
    """Build a checked prefix."""

    return Prefix(alphabet, alphabet.check(symbols))


@dataclass(slots=True, frozen=True)
class EventuallyPeriodic:
    """``prefix`` followed by ``period`` repeated forever."""

    prefix: Tuple[int, ...]
    period: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.period:
            raise MalformedName("eventually periodic names need a nonempty period")

    def symbol(self, index: int) -> int:
        if index < len(self.prefix):
            return self.prefix[index]
        return self.period[(index - len(self.prefix)) % len(self.period)]

    def stream(self) -> Iterator[int]:
        yield from self.prefix
        while True:
            yield from self.period

    def normalized(self) -> "EventuallyPeriodic":
        """Return the description with minimal period and shortest prefix.

        Example:
            >>> EventuallyPeriodic((1, 1, 0, 1), (0, 1, 0, 1)).normalized()
            EventuallyPeriodic(prefix=(1,), period=(1, 0))
        """

        period = self.period
        size = len(period)
        for divisor in range(1, size + 1):
            if size % divisor == 0 and period == period[:divisor] * (size // divisor):
                period = period[:divisor]
                break
        prefix = self.prefix
        while prefix and prefix[-1] == period[-1]:
            period = (prefix[-1],) + period[:-1]
            prefix = prefix[:-1]
        return EventuallyPeriodic(prefix, period)

    def describe(self) -> str:
        head = ",".join(str(s) for s in self.prefix)
        tail = ",".join(str(s) for s in self.period)
        return f"prefix:{head};period:{tail}"


@dataclass(slots=True, frozen=True)
class Generated:
    """Output of ``machine`` on ``input``, run under ``fuel`` steps."""

    machine: "PrefixMachine"
    input: "Name"
    fuel: int | None = None

    def stream(self) -> Iterator[int]:
        return self.machine.output_stream(self.input, self.fuel or DEFAULT_FUEL)

    def describe(self) -> str:
        return f"{self.machine.machine_id}({self.input.describe()})"


@dataclass(slots=True, frozen=True)
class Interleaved:
    """Round-robin interleaving: position ``i * n + j`` holds symbol ``i`` of component ``j``."""

    components: Tuple["Name", ...]

    def stream(self) -> Iterator[int]:
        streams = [component.stream() for component in self.components]
        while True:
            for stream in streams:
                yield next(stream)

    def describe(self) -> str:
        return "<" + ", ".join(c.describe() for c in self.components) + ">"


@dataclass(slots=True, frozen=True, eq=False)
class Computed:
    """Harness-side name produced by a generator factory (random bits, oracle answers)."""

    label: str
    factory: Callable[[], Iterator[int]]

    def stream(self) -> Iterator[int]:
        return self.factory()

    def describe(self) -> str:
        return self.label


NameSource = EventuallyPeriodic | Generated | Interleaved | Computed


@dataclass(slots=True, frozen=True)
class Name:
    """An infinite name over ``alphabet``.

    Example:
        >>> eventually_periodic(BINARY, [0, 1], [1]).take(4).symbols
        (0, 1, 1, 1)
    """

    alphabet: Alphabet
    source: NameSource

    def stream(self) -> Iterator[int]:
        return self.source.stream()

    def take(self, length: int) -> Prefix:
        """Return the first ``length`` symbols.

        Generated names raise ``FuelExhausted`` when their machine runs dry.
        """

        if isinstance(self.source, EventuallyPeriodic):
            symbols = tuple(self.source.symbol(i) for i in range(length))
        else:
            symbols = tuple(islice(self.stream(), length))
        return Prefix(self.alphabet, symbols)

    prefix = take

    def symbol(self, index: int) -> int:
        if isinstance(self.source, EventuallyPeriodic):
            return self.source.symbol(index)
        return self.take(index + 1).symbols[index]

    @property
    def periodic(self) -> EventuallyPeriodic | None:
        """The eventually periodic description, when the name has one."""

        return self.source if isinstance(self.source, EventuallyPeriodic) else None

    def describe(self) -> str:
        return f"alphabet:{self.alphabet.label()};{self.source.describe()}"


def eventually_periodic(
    alphabet: Alphabet, prefix: Sequence[int], period: Sequence[int]
) -> Name:
    """Build a normalized eventually periodic name."""

    source = EventuallyPeriodic(alphabet.check(prefix), alphabet.check(period))
    return Name(alphabet, source.normalized())


def constant_name(symbol: int, alphabet: Alphabet = NATURAL) -> Name:
    """Return ``symbol^ω``."""

    return eventually_periodic(alphabet, (), (symbol,))


def zero_name(alphabet: Alphabet = BINARY) -> Name:
    return constant_name(0, alphabet)


def computed_name(alphabet: Alphabet, label: str, factory: Callable[[], Iterator[int]]) -> Name:
    return Name(alphabet, Computed(label, factory))


class _Replay:
    """One underlying stream, replayed to every reader from a shared buffer."""

    def __init__(self, name: Name) -> None:
        self._name = name
        self._source: Iterator[int] | None = None
        self._seen: List[int] = []
        self._failure: Exception | None = None
        self._lock = Lock()

    def _symbol(self, index: int) -> int:
        with self._lock:
            while index >= len(self._seen):
                if self._failure is not None:
                    raise self._failure
                if self._source is None:
                    self._source = self._name.stream()
                try:
                    self._seen.append(next(self._source))
                except StopIteration:
                    self._failure = MalformedName(f"{self._name.describe()} ended after {len(self._seen)} symbols")
                except Exception as exc:
                    self._failure = exc
            return self._seen[index]

    def stream(self) -> Iterator[int]:
        index = 0
        while True:
            yield self._symbol(index)
            index += 1


def memoized_name(name: Name) -> Name:
    """The same name, with its symbols computed once however often it is read.

    Eventually periodic names are returned unchanged. A failure of the
    underlying stream (for example ``FuelExhausted``) is raised again to every
    reader that gets that far.

    Example:
        >>> runs = []
        >>> def factory():
        ...     runs.append(1)
        ...     yield from iter(int, 1)
        >>> shared = memoized_name(computed_name(BINARY, "zeros", factory))
        >>> shared.take(3).symbols, shared.take(5).symbols, len(runs)
        ((0, 0, 0), (0, 0, 0, 0, 0), 1)
    """

    if name.periodic is not None:
        return name
    replay = _Replay(name)
    return Name(name.alphabet, Computed(f"memo({name.source.describe()})", replay.stream))


def _joined_alphabet(names: Sequence[Name]) -> Alphabet:
    alphabet = names[0].alphabet
    for name in names[1:]:
        alphabet = alphabet.join(name.alphabet)
    return alphabet


def tuple_names(names: Sequence[Name]) -> Name:
    """Interleave ``n`` names into one.

    Args:
        names: Components, at least one.
    Returns:
        Name whose symbol ``i * n + j`` is symbol ``i`` of component ``j``.
        Interleavings of eventually periodic names stay eventually periodic.

    Example:
        >>> pair_names(zero_name(), constant_name(1, BINARY)).take(4).symbols
        (0, 1, 0, 1)
    """

    if not names:
        raise AlphabetMismatch("cannot interleave an empty tuple of names")
    alphabet = _joined_alphabet(names)
    if len(names) == 1:
        return Name(alphabet, names[0].source)
    periodic = [name.periodic for name in names]
    if all(p is not None for p in periodic):
        head = max(len(p.prefix) for p in periodic if p is not None)
        cycle = lcm(*(len(p.period) for p in periodic if p is not None))
        prefix = [p.symbol(i) for i in range(head) for p in periodic if p is not None]
        period = [
            p.symbol(i) for i in range(head, head + cycle) for p in periodic if p is not None
        ]
        return Name(alphabet, EventuallyPeriodic(tuple(prefix), tuple(period)).normalized())
    return Name(alphabet, Interleaved(tuple(names)))


def pair_names(first: Name, second: Name) -> Name:
    """Return ``<first, second>``."""

    return tuple_names((first, second))


def untuple_name(name: Name, arity: int) -> Tuple[Name, ...]:
    """Split an interleaved name into its ``arity`` components.

    Example:
        >>> left, right = unpair_name(eventually_periodic(BINARY, [], [0, 1]))
        >>> left.take(3).symbols, right.take(3).symbols
        ((0, 0, 0), (1, 1, 1))
    """

    if arity < 1:
        raise ValueError("arity must be positive")
    if arity == 1:
        return (name,)
    source = name.source
    if isinstance(source, Interleaved) and len(source.components) == arity:
        return tuple(Name(name.alphabet, c.source) for c in source.components)
    if isinstance(source, EventuallyPeriodic):
        head = ceil(len(source.prefix) / arity)
        cycle = len(source.period)
        parts: List[Name] = []
        for j in range(arity):
            prefix = tuple(source.symbol(i * arity + j) for i in range(head))
            period = tuple(source.symbol((head + i) * arity + j) for i in range(cycle))
            parts.append(Name(name.alphabet, EventuallyPeriodic(prefix, period).normalized()))
        return tuple(parts)
    return tuple(
        computed_name(
            name.alphabet,
            f"component{j}/{arity}({name.describe()})",
            lambda j=j: islice(name.stream(), j, None, arity),
        )
        for j in range(arity)
    )


def unpair_name(name: Name) -> Tuple[Name, Name]:
    first, second = untuple_name(name, 2)
    return first, second


def drop_name(name: Name, count: int) -> Name:
    """Return the name with its first ``count`` symbols removed."""

    source = name.source
    if isinstance(source, EventuallyPeriodic):
        start = max(count, len(source.prefix))
        head = tuple(source.symbol(i) for i in range(count, start))
        cycle = tuple(source.symbol(i) for i in range(start, start + len(source.period)))
        return Name(name.alphabet, EventuallyPeriodic(head, cycle).normalized())
    return computed_name(
        name.alphabet,
        f"drop{count}({name.describe()})",
        lambda: islice(name.stream(), count, None),
    )


def prepend_name(symbols: Sequence[int], name: Name) -> Name:
    """Return ``symbols`` followed by ``name``."""

    head = name.alphabet.check(symbols)
    source = name.source
    if isinstance(source, EventuallyPeriodic):
        return Name(name.alphabet, EventuallyPeriodic(head + source.prefix, source.period).normalized())

    def _stream() -> Iterator[int]:
        yield from head
        yield from name.stream()

    return computed_name(name.alphabet, f"{','.join(map(str, head))}.{name.describe()}", _stream)


def parse_alphabet(text: str) -> Alphabet:
    """Parse ``bin``, ``nat`` or ``finiteK``."""

    label = text.strip().lower()
    if label in {"bin", "binary"}:
        return BINARY
    if label in {"nat", "natural"}:
        return NATURAL
    if label.startswith("finite") and label[6:].isdigit():
        return Alphabet.finite(int(label[6:]))
    raise MalformedName(f"unknown alphabet {text!r}")


def _parse_symbols(text: str) -> List[int]:
    body = text.strip()
    if not body:
        return []
    try:
        return [int(part) for part in body.split(",")]
    except ValueError as exc:
        raise MalformedName(f"bad symbol list {text!r}") from exc


def parse_name_literal(text: str) -> Name:
    """Parse ``alphabet:bin;prefix:0,1,1;period:0``.

    Args:
        text: Literal with ``alphabet`` and ``period`` keys and an optional ``prefix``.
    Returns:
        The normalized eventually periodic name.

    Example:
        >>> parse_name_literal("alphabet:bin;prefix:0,1,1;period:0").take(5).symbols
        (0, 1, 1, 0, 0)
    """

    fields = {}
    for segment in text.split(";"):
        if not segment.strip():
            continue
        key, sep, value = segment.partition(":")
        if not sep:
            raise MalformedName(f"segment {segment!r} lacks a ':'")
        key = key.strip().lower()
        if key not in {"alphabet", "prefix", "period"} or key in fields:
            raise MalformedName(f"unexpected key {key!r} in name literal")
        fields[key] = value
    if "period" not in fields:
        raise MalformedName(f"name literal {text!r} has no period")
    alphabet = parse_alphabet(fields.get("alphabet", "bin"))
    period = _parse_symbols(fields["period"])
    if not period:
        raise MalformedName("period must be nonempty")
    return eventually_periodic(alphabet, _parse_symbols(fields.get("prefix", "")), period)
