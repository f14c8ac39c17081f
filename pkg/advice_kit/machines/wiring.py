"""Plumbing programs: projections, parallel runs, tuple regrouping, sandwiches."""

from __future__ import annotations

from typing import Iterator, List, Sequence

from ..names import NATURAL, Alphabet
from .machine import PrefixMachine, Program
from .tapes import InputExhausted, InterleaveTape, PipeTape, SplitTape, Tape, TeeTape


def pull(source: Iterator[int]) -> int:
    """Next symbol of a sub-program, treating a finished program as exhausted input."""

    try:
        return next(source)
    except StopIteration as exc:
        raise InputExhausted("sub-program stopped") from exc


def copy_tape(tape: Tape) -> Iterator[int]:
    """Emit the tape's symbols unchanged."""

    while True:
        yield tape.read()


def repeat_symbol(tape: Tape, symbol: int) -> Iterator[int]:
    """Emit ``symbol`` forever, reading one input symbol before each repeat."""

    yield symbol
    while True:
        tape.read()
        yield symbol


def _joined(machines: Sequence[PrefixMachine], attr: str) -> Alphabet:
    alphabet: Alphabet = getattr(machines[0], attr)
    for machine in machines[1:]:
        alphabet = alphabet.join(getattr(machine, attr))
    return alphabet


def projection_machine(index: int, arity: int, alphabet: Alphabet = NATURAL) -> PrefixMachine:
    """Machine ``<x0, ..., x(n-1)> -> x(index)``.

    Example:
        >>> from advice_kit.names import Prefix
        >>> projection_machine(1, 2).step(Prefix(NATURAL, (5, 7, 5, 8))).symbols
        (7, 8)
    """

    if not 0 <= index < arity:
        raise ValueError(f"index {index} outside arity {arity}")

    def program(tape: Tape) -> Iterator[int]:
        while True:
            block = [tape.read() for _ in range(arity)]
            yield block[index]

    return PrefixMachine(
        f"pi{index + 1}/{arity}" if arity != 2 else f"pi{index + 1}",
        program,
        alphabet,
        alphabet,
        lambda k: k * arity - (arity - 1 - index),
    )


def parallel_machine(machines: Sequence[PrefixMachine]) -> PrefixMachine:
    """Machine ``<x0, ..., x(n-1)> -> <M0 x0, ..., M(n-1) x(n-1)>``."""

    arity = len(machines)

    def program(tape: Tape) -> Iterator[int]:
        channels = SplitTape(tape, arity).channels()
        outputs = [m.program(channel) for m, channel in zip(machines, channels)]
        while True:
            for output in outputs:
                yield pull(output)

    return PrefixMachine(
        "(" + " x ".join(m.machine_id for m in machines) + ")",
        program,
        _joined(machines, "input_alphabet"),
        _joined(machines, "output_alphabet"),
    )


def fan_out_machine(machines: Sequence[PrefixMachine], machine_id: str | None = None) -> PrefixMachine:
    """Machine ``x -> <M0 x, ..., M(n-1) x>``."""

    def program(tape: Tape) -> Iterator[int]:
        branches = TeeTape(tape).branches(len(machines))
        outputs = [m.program(branch) for m, branch in zip(machines, branches)]
        while True:
            for output in outputs:
                yield pull(output)

    return PrefixMachine(
        machine_id or "<" + ", ".join(m.machine_id for m in machines) + ">",
        program,
        _joined(machines, "input_alphabet"),
        _joined(machines, "output_alphabet"),
    )


def cross_machine(machines: Sequence[PrefixMachine]) -> PrefixMachine:
    """Machine ``<<x0..xn>, <z0..zn>> -> <M0<x0, z0>, ..., Mn<xn, zn>>``.

    This is the shape of product realizers: instances in the first slot,
    answers or advice in the second.
    """

    arity = len(machines)

    def program(tape: Tape) -> Iterator[int]:
        left, right = SplitTape(tape, 2).channels()
        xs = SplitTape(left, arity).channels()
        zs = SplitTape(right, arity).channels()
        outputs = [
            m.program(InterleaveTape((x, z), tape.counter))
            for m, x, z in zip(machines, xs, zs)
        ]
        while True:
            for output in outputs:
                yield pull(output)

    return PrefixMachine(
        "[" + " x ".join(m.machine_id for m in machines) + "]",
        program,
        _joined(machines, "input_alphabet"),
        _joined(machines, "output_alphabet"),
    )


def sandwich_machine(
    outer: PrefixMachine,
    middle: PrefixMachine,
    pre: PrefixMachine,
    machine_id: str | None = None,
) -> PrefixMachine:
    """Machine ``<x, y> -> outer<x, middle<pre x, y>>``.

    Transporting advice along a reduction and composing two reductions both
    have this shape.
    """

    def program(tape: Tape) -> Iterator[int]:
        x_channel, y_channel = SplitTape(tape, 2).channels()
        x_for_outer, x_for_pre = TeeTape(x_channel).branches(2)
        pre_out = PipeTape(pre.program(x_for_pre), tape.counter)
        middle_in = InterleaveTape((pre_out, y_channel), tape.counter)
        middle_out = PipeTape(middle.program(middle_in), tape.counter)
        return outer.program(InterleaveTape((x_for_outer, middle_out), tape.counter))

    return PrefixMachine(
        machine_id or f"{outer.machine_id}<id, {middle.machine_id}<{pre.machine_id}, id>>",
        program,
        pre.input_alphabet.join(middle.input_alphabet),
        outer.output_alphabet,
    )


def nest_machine(arity: int, alphabet: Alphabet = NATURAL) -> PrefixMachine:
    """Machine ``<x0, x1, ..., x(n-1)> -> <x0, <x1, ..., x(n-1)>>``."""

    if arity < 2:
        raise ValueError("nesting needs at least two components")

    def program(tape: Tape) -> Iterator[int]:
        channels: List[Tape] = list(SplitTape(tape, arity).channels())
        rest: Tape = channels[1] if arity == 2 else InterleaveTape(channels[1:], tape.counter)
        yield from copy_tape(InterleaveTape((channels[0], rest), tape.counter))

    return PrefixMachine(f"nest{arity}", program, alphabet, alphabet)


def flatten_machine(arity: int, alphabet: Alphabet = NATURAL) -> PrefixMachine:
    """Inverse of :func:`nest_machine`."""

    if arity < 2:
        raise ValueError("flattening needs at least two components")

    def program(tape: Tape) -> Iterator[int]:
        head, rest = SplitTape(tape, 2).channels()
        tail: List[Tape] = [rest] if arity == 2 else list(SplitTape(rest, arity - 1).channels())
        yield from copy_tape(InterleaveTape([head, *tail], tape.counter))

    return PrefixMachine(f"flatten{arity}", program, alphabet, alphabet)


def program_machine(
    machine_id: str,
    program: Program,
    input_alphabet: Alphabet = NATURAL,
    output_alphabet: Alphabet = NATURAL,
) -> PrefixMachine:
    """Wrap a bare program into a machine without a lookahead declaration."""

    return PrefixMachine(machine_id, program, input_alphabet, output_alphabet)
