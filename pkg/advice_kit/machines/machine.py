"""Monotone prefix machines and their evaluation.

A machine's program is a generator function that takes a tape, reads input
symbols from it on demand, and yields output symbols. Running the same program
on a finite prefix stops at the first read past the end, so the output on a
longer prefix always extends the output on a shorter one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Mapping

from ..constants import DEFAULT_FUEL, TAU_FUEL_CAP
from ..errors import AlphabetMismatch, FuelExhausted
from ..names import BINARY, Alphabet, Generated, Name, Prefix
from .tapes import InputExhausted, PipeTape, PrefixTape, StepCounter, StreamTape, Tape

logger = logging.getLogger(__name__)

Program = Callable[[Tape], Iterator[int]]
Lookahead = Callable[[int], int]


@dataclass(slots=True, frozen=True)
class Diverged:
    """Run outcome when the fuel ran out or the input left the machine's domain.

    Attributes:
        steps: Steps consumed before the run stopped.
        partial: Output emitted before the run stopped.
    """

    steps: int
    partial: Prefix


RunResult = Prefix | Diverged


@dataclass(slots=True, frozen=True)
class RunTrace:
    output: RunResult
    steps: int
    annotations: Mapping[str, object] = field(default_factory=dict)


def drive(program: Program, tape: Tape, out: List[int], limit: int) -> None:
    """Run ``program`` on ``tape`` until ``limit`` symbols are in ``out``.

    Each emitted symbol costs one step. The run also stops when the program
    reads past a finite input or returns. ``FuelExhausted`` propagates, with
    ``out`` holding what was emitted so far.
    """

    if limit <= 0:
        return
    generator = program(tape)
    try:
        while len(out) < limit:
            try:
                symbol = next(generator)
            except StopIteration:
                return
            tape.counter.charge()
            out.append(symbol)
    except InputExhausted:
        return
    finally:
        generator.close()


@dataclass(slots=True, frozen=True)
class PrefixMachine:
    """A realizer given by a tape program.

    Attributes:
        machine_id: Catalog or derived identifier.
        program: Generator function ``program(tape) -> Iterator[int]``.
        input_alphabet: Alphabet of the names it reads.
        output_alphabet: Alphabet of the symbols it emits.
        lookahead: Optional bound ``k -> input symbols needed for k outputs``.

    Example:
        >>> from advice_kit.machines.catalog import identity_machine
        >>> identity_machine().step(Prefix(BINARY, (0, 1, 1))).symbols
        (0, 1, 1)
    """

    machine_id: str
    program: Program
    input_alphabet: Alphabet = BINARY
    output_alphabet: Alphabet = BINARY
    lookahead: Lookahead | None = None

    def trace_prefix(self, prefix: Prefix, fuel: int = TAU_FUEL_CAP) -> RunTrace:
        """Run on a finite prefix until the program needs more input."""

        counter = StepCounter(fuel)
        out: List[int] = []
        try:
            drive(self.program, PrefixTape(prefix.symbols, counter), out, limit=1 << 62)
        except FuelExhausted:
            partial = Prefix(self.output_alphabet, tuple(out))
            return RunTrace(Diverged(counter.steps, partial), counter.steps, dict(counter.annotations))
        return RunTrace(Prefix(self.output_alphabet, tuple(out)), counter.steps, dict(counter.annotations))

    def step(self, prefix: Prefix) -> Prefix:
        """Output determined by ``prefix``."""

        trace = self.trace_prefix(prefix)
        if isinstance(trace.output, Diverged):
            return trace.output.partial
        return trace.output

    def step_count(self, prefix: Prefix) -> int:
        return self.trace_prefix(prefix).steps

    def declared_lookahead(self, k: int) -> int | None:
        return None if self.lookahead is None else self.lookahead(k)

    def output_stream(self, name: Name, fuel: int = DEFAULT_FUEL) -> Iterator[int]:
        """Lazily emit the machine's output on ``name``.

        Raises FuelExhausted (while iterating) once ``fuel`` steps are spent.
        """

        counter = StepCounter(fuel)
        generator = self.program(StreamTape(name.stream(), counter))
        try:
            for symbol in generator:
                counter.charge()
                yield symbol
        finally:
            generator.close()

    def on(self, name: Name, fuel: int | None = None) -> Name:
        """Return the generated name ``self(name)``."""

        return Name(self.output_alphabet, Generated(self, name, fuel))


def run_machine(machine: PrefixMachine, x: Name, k: int, fuel: int = DEFAULT_FUEL) -> RunResult:
    """Run ``machine`` on ``x`` until ``k`` output symbols exist.

    Args:
        machine: Machine to run.
        x: Input name.
        k: Output symbols wanted.
        fuel: Step budget.
    Returns:
        The first ``k`` output symbols, or ``Diverged`` when the budget runs
        out or the machine stops producing.

    Example:
        >>> from advice_kit.machines.catalog import never_machine
        >>> from advice_kit.names import zero_name
        >>> isinstance(run_machine(never_machine(), zero_name(), 1, fuel=1000), Diverged)
        True
    """

    return trace_machine(machine, x, k, fuel).output


def trace_machine(machine: PrefixMachine, x: Name, k: int, fuel: int = DEFAULT_FUEL) -> RunTrace:
    """Like :func:`run_machine` but also reports steps and annotations."""

    if k < 0 or fuel < 0:
        raise ValueError("k and fuel must be non-negative")
    counter = StepCounter(fuel)
    out: List[int] = []
    try:
        drive(machine.program, StreamTape(x.stream(), counter), out, k)
    except FuelExhausted:
        logger.debug("%s ran out of fuel after %d steps", machine.machine_id, counter.steps)
        return _diverged_trace(machine, counter, out)
    if len(out) < k:
        return _diverged_trace(machine, counter, out)
    return RunTrace(Prefix(machine.output_alphabet, tuple(out)), counter.steps, dict(counter.annotations))


def _diverged_trace(machine: PrefixMachine, counter: StepCounter, out: List[int]) -> RunTrace:
    partial = Prefix(machine.output_alphabet, tuple(out))
    return RunTrace(Diverged(counter.steps, partial), counter.steps, dict(counter.annotations))


def compose_machines(outer: PrefixMachine, inner: PrefixMachine) -> PrefixMachine:
    """Return ``outer ∘ inner``; the inner program's output feeds the outer's reads.

    Example:
        >>> from advice_kit.machines.catalog import bitflip_machine
        >>> twice = compose_machines(bitflip_machine(), bitflip_machine())
        >>> twice.step(Prefix(BINARY, (0, 1, 1))).symbols
        (0, 1, 1)
    """

    if not outer.input_alphabet.subsumes(inner.output_alphabet):
        raise AlphabetMismatch(
            f"{outer.machine_id} reads {outer.input_alphabet.label()} but "
            f"{inner.machine_id} emits {inner.output_alphabet.label()}"
        )

    def program(tape: Tape) -> Iterator[int]:
        return outer.program(PipeTape(inner.program(tape), tape.counter))

    lookahead = None
    if outer.lookahead is not None and inner.lookahead is not None:
        outer_la, inner_la = outer.lookahead, inner.lookahead
        lookahead = lambda k: inner_la(outer_la(k))  # noqa: E731
    return PrefixMachine(
        f"{outer.machine_id}∘{inner.machine_id}",
        program,
        inner.input_alphabet,
        outer.output_alphabet,
        lookahead,
    )
