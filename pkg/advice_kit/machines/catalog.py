"""Shipped machines: Cantor-space examples for the complexity harness and the
decoders that turn random Cantor advice into advice over other spaces."""

from __future__ import annotations

from math import ceil
from typing import Callable, Dict, Iterator

from ..constants import PADDED_DELAY_SHIFT
from ..errors import UnknownCatalogEntry
from ..names import BINARY, NATURAL, Alphabet
from .machine import PrefixMachine
from .tapes import Tape
from .wiring import copy_tape, projection_machine, repeat_symbol


def identity_machine(alphabet: Alphabet = BINARY) -> PrefixMachine:
    """Copy the input; ``tau(k) = 2k``."""

    def program(tape: Tape) -> Iterator[int]:
        return copy_tape(tape)

    return PrefixMachine("identity", program, alphabet, alphabet, lambda k: k)


def bitflip_machine() -> PrefixMachine:
    def program(tape: Tape) -> Iterator[int]:
        while True:
            yield 1 - tape.read()

    return PrefixMachine("bitflip", program, BINARY, BINARY, lambda k: k)


def never_machine(alphabet: Alphabet = BINARY) -> PrefixMachine:
    """Read forever, never emit."""

    def program(tape: Tape) -> Iterator[int]:
        while True:
            tape.read()
        yield  # pragma: no cover

    return PrefixMachine("never", program, alphabet, alphabet)


def bit_doubling_machine() -> PrefixMachine:
    """Emit every input bit twice: output ``i`` is input ``i // 2``."""

    def program(tape: Tape) -> Iterator[int]:
        while True:
            bit = tape.read()
            yield bit
            yield bit

    return PrefixMachine("bit-doubling", program, BINARY, BINARY, lambda k: ceil(k / 2))


def padded_delay_machine(shift: int = PADDED_DELAY_SHIFT) -> PrefixMachine:
    """Copy the input after ``2**(k + shift)`` ticks of work before output bit ``k`` (1-based).

    The function computed is the identity; only the work is exponential.
    """

    def program(tape: Tape) -> Iterator[int]:
        k = 0
        while True:
            k += 1
            bit = tape.read()
            tape.tick(2 ** (k + shift))
            yield bit

    return PrefixMachine("padded-delay", program, BINARY, BINARY, lambda k: k)


def leading_ones_machine() -> PrefixMachine:
    """Cantor to naturals: ``1^n 0 ... -> n^ω``.

    The uniform measure on Cantor space pushes forward to ``p(n) = 2**(-n-1)``.
    """

    def program(tape: Tape) -> Iterator[int]:
        count = 0
        while tape.read() == 1:
            count += 1
        yield from repeat_symbol(tape, count)

    return PrefixMachine("leading-ones", program, BINARY, NATURAL)


def repeated_counts_machine() -> PrefixMachine:
    """Cantor to Baire: successive runs ``1^n0 1^m0 ... -> (n, m, ...)``."""

    def program(tape: Tape) -> Iterator[int]:
        while True:
            count = 0
            while tape.read() == 1:
                count += 1
            yield count

    return PrefixMachine("repeated-counts", program, BINARY, NATURAL)


def first_bit_machine() -> PrefixMachine:
    """Cantor to {0, 1}: the first bit, repeated."""

    def program(tape: Tape) -> Iterator[int]:
        yield from repeat_symbol(tape, tape.read())

    return PrefixMachine("first-bit", program, BINARY, BINARY)


def block_decoder_machine(size: int) -> PrefixMachine:
    """Cantor to Finite(size) by rejection sampling on fixed bit blocks.

    Blocks of ``ceil(log2 size)`` bits are read as binary numbers until one is
    below ``size``; each value then has probability ``1 / size``.
    """

    if size < 1:
        raise ValueError("size must be positive")
    width = max(1, (size - 1).bit_length())

    def program(tape: Tape) -> Iterator[int]:
        while True:
            value = 0
            for _ in range(width):
                value = 2 * value + tape.read()
            if value < size:
                break
        yield from repeat_symbol(tape, value)

    return PrefixMachine(f"block:{size}", program, BINARY, Alphabet.finite(size))


def pi1_machine(alphabet: Alphabet = BINARY) -> PrefixMachine:
    return projection_machine(0, 2, alphabet)


def pi2_machine(alphabet: Alphabet = BINARY) -> PrefixMachine:
    """Second component of a pair; ``tau(k) = 3k``."""

    return projection_machine(1, 2, alphabet)


_CATALOG: Dict[str, Callable[[], PrefixMachine]] = {
    "identity": identity_machine,
    "bitflip": bitflip_machine,
    "never": never_machine,
    "bit-doubling": bit_doubling_machine,
    "padded-delay": padded_delay_machine,
    "leading-ones": leading_ones_machine,
    "repeated-counts": repeated_counts_machine,
    "first-bit": first_bit_machine,
    "pi1": pi1_machine,
    "pi2": pi2_machine,
}


def machine_ids() -> list[str]:
    return sorted(_CATALOG) + ["block:<k>"]


def get_machine(machine_id: str) -> PrefixMachine:
    """Look up a shipped machine by id.

    Example:
        >>> get_machine("pi2").declared_lookahead(3)
        6
    """

    if machine_id.startswith("block:"):
        suffix = machine_id.split(":", 1)[1]
        if suffix.isdigit():
            return block_decoder_machine(int(suffix))
    try:
        factory = _CATALOG[machine_id]
    except KeyError as exc:
        raise UnknownCatalogEntry(f"unknown machine {machine_id!r}") from exc
    return factory()
