"""Signed-digit names of reals.

A real name is a header followed by digits. The header is a sign symbol
(``0`` for a non-negative exponent, ``1`` for a negative one), the exponent's
magnitude in unary 1s, and a terminating ``0``. Each digit ``d`` in
``{-1, 0, 1}`` is stored as the symbol ``d + 1``, so names live over Finite(3).

After ``n`` digits the named value lies in ``2**e * [s - 2**-n, s + 2**-n]``
where ``s`` is the sum of ``d_i * 2**-i`` over the digits read.
"""

from __future__ import annotations

import logging
from collections import deque
from fractions import Fraction
from typing import Callable, Iterator, List, Sequence, Tuple

from ..errors import MalformedName, NoConvergence
from ..intervals import Interval
from ..machines.machine import PrefixMachine, Program
from ..machines.tapes import SplitTape, Tape
from ..names import BINARY, Alphabet, EventuallyPeriodic, Name, Prefix, computed_name

logger = logging.getLogger(__name__)

REAL_ALPHABET = Alphabet.finite(3)
MAX_ENCLOSURE_PRECISION = 1 << 14
_DIGITS_PER_ROUND = 4


def header_symbols(exponent: int) -> Tuple[int, ...]:
    """Header for ``exponent``.

    Example:
        >>> header_symbols(2), header_symbols(-1)
        ((0, 1, 1, 0), (1, 1, 0))
    """

    sign = 0 if exponent >= 0 else 1
    return (sign,) + (1,) * abs(exponent) + (0,)


class RealReader:
    """Incremental decoder for one real name.

    Example:
        >>> reader = RealReader()
        >>> for symbol in (0, 0, 2, 1):
        ...     reader.feed(symbol)
        >>> reader.interval()
        Interval(lo=Fraction(1, 4), hi=Fraction(3, 4))
    """

    __slots__ = ("_sign", "_magnitude", "header_done", "digits", "_numerator")

    def __init__(self) -> None:
        self._sign: int | None = None
        self._magnitude = 0
        self.header_done = False
        self.digits = 0
        self._numerator = 0

    @property
    def exponent(self) -> int:
        if not self.header_done:
            raise MalformedName("real name header is incomplete")
        return -self._magnitude if self._sign == 1 else self._magnitude

    def feed(self, symbol: int) -> None:
        if self._sign is None:
            if symbol not in (0, 1):
                raise MalformedName(f"bad sign symbol {symbol}")
            self._sign = symbol
            return
        if not self.header_done:
            if symbol == 1:
                self._magnitude += 1
            elif symbol == 0:
                self.header_done = True
            else:
                raise MalformedName(f"bad exponent symbol {symbol}")
            return
        if symbol not in (0, 1, 2):
            raise MalformedName(f"digit symbol {symbol} is not in {{0, 1, 2}}")
        self._numerator = 2 * self._numerator + (symbol - 1)
        self.digits += 1

    def interval(self) -> Interval:
        """Tightest interval containing every completion of what was read."""

        scale = Fraction(2) ** self.exponent
        centre = Fraction(self._numerator, 2**self.digits)
        radius = Fraction(1, 2**self.digits)
        return Interval((centre - radius) * scale, (centre + radius) * scale)


def decode_real_prefix(prefix: Prefix | Sequence[int]) -> Interval:
    """Interval named by a finite real-name prefix.

    Example:
        >>> decode_real_prefix((0, 0))
        Interval(lo=Fraction(-1, 1), hi=Fraction(1, 1))
        >>> decode_real_prefix((0, 0, 2))
        Interval(lo=Fraction(0, 1), hi=Fraction(1, 1))
    """

    reader = RealReader()
    for symbol in prefix:
        reader.feed(symbol)
    return reader.interval()


def real_enclosure(name: Name, digits: int) -> Interval:
    """Interval after reading ``digits`` digits of ``name``."""

    return read_real_tuple(name, 1, digits)[0]


def read_real_tuple(name: Name, arity: int, digits: int) -> List[Interval]:
    """Read ``arity`` interleaved real names in one pass, ``digits`` digits each."""

    readers = [RealReader() for _ in range(arity)]
    stream = name.stream()
    turn = 0
    while not all(r.header_done and r.digits >= digits for r in readers):
        readers[turn].feed(next(stream))
        turn = (turn + 1) % arity
    return [reader.interval() for reader in readers]


def minimal_exponent(enclosure: Interval) -> int:
    """Smallest ``e >= 0`` with the enclosure inside ``[-2**e, 2**e]``."""

    bound = enclosure.magnitude()
    exponent = 0
    while bound > Fraction(2) ** exponent:
        exponent += 1
    return exponent


def _binary_digits(value: Fraction) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Greedy binary digits of ``value`` in ``[0, 1]`` as (prefix, period)."""

    seen: dict[Fraction, int] = {}
    digits: List[int] = []
    state = value
    while state not in seen:
        seen[state] = len(digits)
        state *= 2
        if state >= 1:
            digits.append(1)
            state -= 1
        else:
            digits.append(0)
    start = seen[state]
    return tuple(digits[:start]), tuple(digits[start:])


def encode_rational(value: Fraction | int) -> Name:
    """Total signed-digit name of a rational.

    Example:
        >>> encode_rational(Fraction(1, 2)).take(5).symbols
        (0, 0, 2, 1, 1)
        >>> decode_real_prefix(encode_rational(3).take(6))
        Interval(lo=Fraction(2, 1), hi=Fraction(4, 1))
    """

    q = Fraction(value)
    exponent = minimal_exponent(Interval.of(q))
    scaled = abs(q) / Fraction(2) ** exponent
    if scaled == 1:
        head, cycle = (), (1,)
    else:
        head, cycle = _binary_digits(scaled)
    sign = -1 if q < 0 else 1
    prefix = header_symbols(exponent) + tuple(sign * d + 1 for d in head)
    period = tuple(sign * d + 1 for d in cycle)
    return Name(REAL_ALPHABET, EventuallyPeriodic(prefix, period).normalized())


def exact_value(name: Name) -> Fraction:
    """Exact value of an eventually periodic real name.

    Example:
        >>> exact_value(encode_rational(Fraction(-5, 3)))
        Fraction(-5, 3)
    """

    source = name.periodic
    if source is None:
        raise MalformedName("exact values need an eventually periodic name")
    reader = RealReader()
    position = 0
    while not reader.header_done:
        reader.feed(source.symbol(position))
        position += 1
    start = max(position, len(source.prefix))
    head = [source.symbol(i) - 1 for i in range(position, start)]
    cycle = [source.symbol(i) - 1 for i in range(start, start + len(source.period))]
    value = Fraction(0)
    for index, digit in enumerate(head):
        value += Fraction(digit, 2 ** (index + 1))
    block = 0
    for digit in cycle:
        block = 2 * block + digit
    tail = Fraction(block, 2 ** len(cycle) - 1) / 2 ** len(head)
    return (value + tail) * Fraction(2) ** reader.exponent


class SignedDigitEmitter:
    """Turns shrinking enclosures into signed digits under a fixed exponent."""

    def __init__(self, exponent: int) -> None:
        self.exponent = exponent
        self._scale = Fraction(2) ** exponent
        self._numerator = 0
        self.count = 0

    def current(self) -> Interval:
        radius = Fraction(1, 2**self.count)
        centre = Fraction(self._numerator, 2**self.count)
        return Interval((centre - radius) * self._scale, (centre + radius) * self._scale)

    def feed(self, enclosure: Interval, limit: int) -> List[int]:
        """Emit digits (as symbols) justified by ``enclosure``, at most up to ``limit`` digits in total."""

        clamped = enclosure.intersect(self.current())
        if clamped is None:
            raise NoConvergence(f"enclosure {enclosure} left the emitted interval {self.current()}")
        target = Interval(clamped.lo / self._scale, clamped.hi / self._scale)
        out: List[int] = []
        while self.count < limit:
            half = Fraction(1, 2 ** (self.count + 1))
            centre = Fraction(self._numerator, 2**self.count)
            for digit in (0, -1, 1):
                child = Interval.around(centre + digit * half, half)
                if target.subset_of(child):
                    self._numerator = 2 * self._numerator + digit
                    self.count += 1
                    out.append(digit + 1)
                    break
            else:
                break
        return out


def real_name_from_enclosures(
    label: str,
    enclosure_at: Callable[[int], Interval],
    exponent: int | None = None,
    start: int = 8,
) -> Name:
    """Real name of the value that ``enclosure_at(p)`` encloses to about ``2**-p``.

    Args:
        label: Description of the name.
        enclosure_at: Nested enclosures; widths must shrink to zero as ``p`` grows.
        exponent: Fixed header exponent, or None to size it from the first enclosure.
        start: First precision asked for.
    Returns:
        A lazily computed real name. Iterating raises NoConvergence when
        enclosures stop shrinking before ``MAX_ENCLOSURE_PRECISION``.
    """

    def stream() -> Iterator[int]:
        precision = start
        first = enclosure_at(precision)
        e = minimal_exponent(first) if exponent is None else exponent
        yield from header_symbols(e)
        emitter = SignedDigitEmitter(e)
        while True:
            digits = emitter.feed(enclosure_at(precision), limit=precision + max(e, 0) + 2)
            yield from digits
            if not digits and precision > MAX_ENCLOSURE_PRECISION:
                raise NoConvergence(f"{label}: enclosures stalled at precision {precision}")
            precision += 8

    return computed_name(REAL_ALPHABET, label, stream)


def read_reals_step(channels: Sequence[Tape], readers: Sequence[RealReader]) -> None:
    """Advance every reader by one symbol from its channel."""

    for channel, reader in zip(channels, readers):
        reader.feed(channel.read())


def interval_map_program(
    arity: int,
    fn: Callable[[List[Interval]], Interval],
    exponent: int | None = None,
) -> Program:
    """Program computing a real function of ``arity`` interleaved real inputs.

    ``fn`` must be an inclusion-monotone interval extension whose result shrinks
    to a point as its arguments do. The header is sized once the arguments give
    an enclosure of width at most 1, unless ``exponent`` fixes it.
    """

    def program(tape: Tape) -> Iterator[int]:
        channels = SplitTape(tape, arity).channels() if arity > 1 else (tape,)
        readers = [RealReader() for _ in range(arity)]
        while not all(r.header_done for r in readers):
            for channel, reader in zip(channels, readers):
                if not reader.header_done:
                    reader.feed(channel.read())
        enclosure = fn([r.interval() for r in readers])
        while exponent is None and enclosure.width() > 1:
            read_reals_step(channels, readers)
            enclosure = fn([r.interval() for r in readers])
        e = minimal_exponent(enclosure) if exponent is None else exponent
        for symbol in header_symbols(e):
            yield symbol
        emitter = SignedDigitEmitter(e)
        while True:
            for symbol in emitter.feed(enclosure, limit=emitter.count + _DIGITS_PER_ROUND):
                yield symbol
            read_reals_step(channels, readers)
            enclosure = fn([r.interval() for r in readers])

    return program


def interval_map_machine(
    machine_id: str,
    arity: int,
    fn: Callable[[List[Interval]], Interval],
    exponent: int | None = None,
) -> PrefixMachine:
    return PrefixMachine(
        machine_id, interval_map_program(arity, fn, exponent), REAL_ALPHABET, REAL_ALPHABET
    )


def _group_channels(tape: Tape, groups: Sequence[int]) -> List[Tape]:
    if len(groups) == 1:
        return list(SplitTape(tape, groups[0]).channels()) if groups[0] > 1 else [tape]
    channels: List[Tape] = []
    for outer, size in zip(SplitTape(tape, len(groups)).channels(), groups):
        channels.extend(SplitTape(outer, size).channels() if size > 1 else (outer,))
    return channels


def interval_tuple_program(
    groups: Sequence[int],
    outputs: Sequence[Callable[[List[Interval]], Interval]],
    exponents: Callable[[List[int]], Sequence[int]],
) -> Program:
    """Program computing a tuple of real functions of grouped real inputs.

    The input is ``<g0, g1, ...>`` where group ``j`` interleaves ``groups[j]``
    reals (a single group is a flat tuple). Every entry of ``outputs`` receives
    the flat list of input enclosures; the results are emitted interleaved.
    ``exponents`` maps the input header exponents to the output headers, which
    must bound the outputs.

    Example:
        >>> swap = interval_tuple_machine("swap", [2], [lambda a: a[1], lambda a: a[0]], lambda e: [e[1], e[0]])
        >>> from advice_kit.names import tuple_names
        >>> name = swap.on(tuple_names([encode_rational(0), encode_rational(3)]))
        >>> [i.contains(v) for i, v in zip(read_real_tuple(name, 2, 6), (3, 0))]
        [True, True]
    """

    def program(tape: Tape) -> Iterator[int]:
        channels = _group_channels(tape, groups)
        readers = [RealReader() for _ in channels]
        while not all(r.header_done for r in readers):
            for channel, reader in zip(channels, readers):
                if not reader.header_done:
                    reader.feed(channel.read())
        emitters = [SignedDigitEmitter(e) for e in exponents([r.exponent for r in readers])]
        queues = [deque(header_symbols(emitter.exponent)) for emitter in emitters]
        while True:
            while all(queues):
                for queue in queues:
                    yield queue.popleft()
            read_reals_step(channels, readers)
            args = [r.interval() for r in readers]
            for fn, emitter, queue in zip(outputs, emitters, queues):
                queue.extend(emitter.feed(fn(args), limit=emitter.count + _DIGITS_PER_ROUND))

    return program


def interval_tuple_machine(
    machine_id: str,
    groups: Sequence[int],
    outputs: Sequence[Callable[[List[Interval]], Interval]],
    exponents: Callable[[List[int]], Sequence[int]],
) -> PrefixMachine:
    return PrefixMachine(
        machine_id, interval_tuple_program(groups, outputs, exponents), REAL_ALPHABET, REAL_ALPHABET
    )


def prefix_enclosure_machine(
    machine_id: str,
    enclosure_of: Callable[[Tuple[int, ...]], Interval],
    input_alphabet: Alphabet = BINARY,
    exponent: int = 0,
) -> PrefixMachine:
    """Machine emitting the real that the enclosures of its input prefixes shrink to."""

    def program(tape: Tape) -> Iterator[int]:
        yield from header_symbols(exponent)
        emitter = SignedDigitEmitter(exponent)
        seen: List[int] = []
        while True:
            for symbol in emitter.feed(enclosure_of(tuple(seen)), limit=emitter.count + _DIGITS_PER_ROUND):
                yield symbol
            seen.append(tape.read())

    return PrefixMachine(machine_id, program, input_alphabet, REAL_ALPHABET)


def translate_binary_to_signed_machine() -> PrefixMachine:
    """Binary expansion of a point of [0, 1] to a signed-digit name.

    Example:
        >>> translate_binary_to_signed_machine().step(Prefix(BINARY, (1, 0))).symbols
        (0, 0, 2, 1)
    """

    def program(tape: Tape) -> Iterator[int]:
        yield from header_symbols(0)
        while True:
            yield tape.read() + 1

    return PrefixMachine("translate", program, BINARY, REAL_ALPHABET, lambda k: max(0, k - 2))


def translate_name(bits: Name) -> Name:
    return translate_binary_to_signed_machine().on(bits)


def shift_exponent_machine(shift: int) -> PrefixMachine:
    """Multiply a real name by ``2**shift`` by rewriting its header."""

    def program(tape: Tape) -> Iterator[int]:
        reader = RealReader()
        while not reader.header_done:
            reader.feed(tape.read())
        yield from header_symbols(reader.exponent + shift)
        while True:
            yield tape.read()

    return PrefixMachine(f"shift{shift:+d}", program, REAL_ALPHABET, REAL_ALPHABET)


def negate_machine() -> PrefixMachine:
    def program(tape: Tape) -> Iterator[int]:
        reader = RealReader()
        while not reader.header_done:
            symbol = tape.read()
            reader.feed(symbol)
            yield symbol
        while True:
            yield 2 - tape.read()

    return PrefixMachine("negate", program, REAL_ALPHABET, REAL_ALPHABET)


def real_zero() -> Name:
    return encode_rational(0)

