"""
Shipped reduction witnesses.

Ids:
    ``llpo-seigen2``: LLPO <= SEIGEN_2.
    ``seigen-tensor:n:m``: SEIGEN_n x SEIGEN_m <= SEIGEN_nm (default 2:2).
    ``llpo-power:n``: LLPO^n <= SEIGEN_(2^n) by chaining the two (n <= 3).
    ``mlpo-lineq:n``: MLPO_(n+1) <= LINEQ_n_(n+1) (default n = 2).
    ``cnat-pcr``: C_NAT <= PC_REAL.
    ``pc-interval-cantor`` and ``pc-cantor-interval``: the two directions
    between positive choice on the unit interval and on Cantor space.
"""

from __future__ import annotations

import logging
from collections import deque
from fractions import Fraction
from itertools import count
from math import floor
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from ..errors import FactorizationStall, NoConvergence, UnknownCatalogEntry
from ..intervals import Interval, interval_sum
from ..machines.machine import PrefixMachine
from ..machines.tapes import SplitTape, Tape
from ..machines.wiring import fan_out_machine, repeat_symbol
from ..measures.fatcantor import fat_address_machine
from ..measures.transport import binary_preimage_machine, fat_embed_closed_machine
from ..names import BINARY, NATURAL
from ..spaces.reals import (
    REAL_ALPHABET,
    RealReader,
    SignedDigitEmitter,
    header_symbols,
    interval_tuple_machine,
    prefix_enclosure_machine,
    read_reals_step,
    translate_binary_to_signed_machine,
)
from ..spaces.sets import encode_entries, interval_word, read_entry
from .witness import ReductionWitness, compose_reductions, product_reductions

logger = logging.getLogger(__name__)

INITIAL_PRECISION = 4
MAX_ROUNDS = 12
DIGIT_STEP = 8
MAX_FACTOR_PRECISION = 1024
CHOICE_RADIUS = Fraction(1, 8)
MAX_LLPO_POWER = 3

Decision = Callable[[List[Interval]], int | None]


def _decide_by_rounds(tape: Tape, arity: int, decide: Decision, label: str) -> Iterator[int]:
    """Read the answer's ``arity`` reals at doubling precision until ``decide`` commits.

    After committing, the constant answer is paced by the source channel: later
    outputs demand at most one answer symbol each, and none while source symbols
    buffered by the decision rounds last.
    """

    source, answer = SplitTape(tape, 2).channels()
    channels = SplitTape(answer, arity).channels() if arity > 1 else (answer,)
    readers = [RealReader() for _ in channels]
    precision = INITIAL_PRECISION
    for rounds in range(1, MAX_ROUNDS + 1):
        while not all(r.header_done and r.digits >= precision for r in readers):
            read_reals_step(channels, readers)
        choice = decide([r.interval() for r in readers])
        if choice is not None:
            logger.debug("%s: answer %d after %d rounds at precision %d", label, choice, rounds, precision)
            tape.annotate("rounds", rounds)
            tape.annotate("precision", precision)
            yield from repeat_symbol(source, choice)
            return
        precision *= 2
    raise NoConvergence(f"{label}: no decision after {MAX_ROUNDS} rounds")


def _on_answer(machine: PrefixMachine, machine_id: str) -> PrefixMachine:
    """``<x, z> -> machine(z)``."""

    def program(tape: Tape) -> Iterator[int]:
        _, z_channel = SplitTape(tape, 2).channels()
        return machine.program(z_channel)

    return PrefixMachine(machine_id, program, NATURAL, machine.output_alphabet)


# LLPO and symmetric eigenvectors.


def _cantor_real(bits: Sequence[int]) -> Interval:
    value = sum((Fraction(b, 2 ** (i + 1)) for i, b in enumerate(bits)), Fraction(0))
    return Interval(value, value + Fraction(1, 2 ** len(bits)))


def _llpo_matrix_entry(component: int, scale: int, exponent: int, machine_id: str) -> PrefixMachine:
    def enclosure(seen: Tuple[int, ...]) -> Interval:
        return scale * _cantor_real(seen[component::2])

    return prefix_enclosure_machine(machine_id, enclosure, BINARY, exponent)


def _llpo_decision(vector: List[Interval]) -> int | None:
    v1, v2 = vector
    if (v1 * v2).excludes_zero():
        return 0
    if (v1.square() - v2.square()).excludes_zero():
        return 1
    return None


def llpo_to_seigen2_witness() -> ReductionWitness:
    """LLPO <= SEIGEN_2.

    ``<p, q>`` becomes the matrix ``r(p) diag(1, 2) + r(q) [[0, 1], [1, 0]]``
    with ``r(p) = sum p(i) 2^(-i-1)``. When ``p`` is zero the eigenvectors are
    diagonal; when ``q`` is zero they are the coordinate axes. The post-processor
    answers 0 once the returned vector is provably off the axes and 1 once it
    is provably off the diagonals, testing the axes first.

    Example:
        >>> from advice_kit.names import eventually_periodic, pair_names, zero_name
        >>> from advice_kit.reductions.witness import apply_reduction, solver_for
        >>> w = llpo_to_seigen2_witness()
        >>> x = pair_names(zero_name(), eventually_periodic(BINARY, [1], [0]))
        >>> apply_reduction(w, solver_for("SEIGEN_2", "least"), x, 4).symbols
        (0, 0, 0, 0)
    """

    pre = fan_out_machine(
        [
            _llpo_matrix_entry(0, 1, 0, "a11"),
            _llpo_matrix_entry(1, 1, 0, "a12"),
            _llpo_matrix_entry(1, 1, 0, "a21"),
            _llpo_matrix_entry(0, 2, 1, "a22"),
        ],
        "llpo-matrix",
    )

    def post(tape: Tape) -> Iterator[int]:
        return _decide_by_rounds(tape, 2, _llpo_decision, "llpo-seigen2")

    return ReductionWitness(
        "llpo-seigen2",
        "LLPO",
        "SEIGEN_2",
        pre,
        PrefixMachine("llpo-axes", post, NATURAL, NATURAL),
        "axes or diagonals of the returned eigenvector",
    )


def _kronecker_machine(n: int, m: int) -> PrefixMachine:
    size = n * m
    outputs: List[Callable[[List[Interval]], Interval]] = []
    sources: List[Tuple[int, int]] = []
    for row in range(size):
        for col in range(size):
            i1, i2 = divmod(row, m)
            j1, j2 = divmod(col, m)
            a, b = i1 * n + j1, n * n + i2 * m + j2
            sources.append((a, b))
            outputs.append(lambda args, a=a, b=b: args[a] * args[b])
    return interval_tuple_machine(
        f"kronecker:{n}:{m}",
        [n * n, m * m],
        outputs,
        lambda exps: [exps[a] + exps[b] for a, b in sources],
    )


def _pair_order(n: int, m: int) -> Iterator[int]:
    """Component order of ``<<u_0..u_(n-1)>, <v_0..v_(m-1)>>``; ``v_j`` is component ``n + j``."""

    for t in count():
        yield t % n
        yield n + t % m


def _check_rank_one(grid: List[List[Interval]], label: str) -> None:
    for i in range(len(grid)):
        for k in range(i + 1, len(grid)):
            for j in range(len(grid[0])):
                for l in range(j + 1, len(grid[0])):
                    if (grid[i][j] * grid[k][l] - grid[i][l] * grid[k][j]).excludes_zero():
                        raise FactorizationStall(f"{label}: returned vector is not a tensor product")


def _pivot_row(grid: List[List[Interval]]) -> int | None:
    best, best_mass = None, Fraction(0)
    for index, row in enumerate(grid):
        mass = max(e.mignitude() for e in row)
        if mass > best_mass:
            best, best_mass = index, mass
    return best


def _factor(grid: List[List[Interval]], pivot: int, precision: int) -> Tuple[List[Interval], List[Interval]] | None:
    norm = interval_sum(e.square() for e in grid[pivot]).sqrt(precision + 8)
    if norm.contains_zero():
        return None
    v = [e / norm for e in grid[pivot]]
    u = [interval_sum(a * b for a, b in zip(row, v)) for row in grid]
    return u, v


def seigen_tensor_witness(n: int, m: int) -> ReductionWitness:
    """SEIGEN_n x SEIGEN_m <= SEIGEN_nm through Kronecker products.

    The returned vector ``w`` of ``A (x) B`` is read as an ``n x m`` grid; a row
    with a provably nonzero entry gives ``v`` after normalising, and ``u = W v``.
    A 2x2 minor bounded away from zero means ``w`` mixes tensor factors.

    Example:
        >>> seigen_tensor_witness(2, 2).target
        'SEIGEN_4'
    """

    if n < 1 or m < 1 or n * m > 8:
        raise UnknownCatalogEntry("seigen-tensor needs 1 <= n, m and n * m <= 8")
    size = n * m
    label = f"seigen-tensor:{n}:{m}"

    def post(tape: Tape) -> Iterator[int]:
        _, answer = SplitTape(tape, 2).channels()
        channels = SplitTape(answer, size).channels() if size > 1 else (answer,)
        readers = [RealReader() for _ in channels]
        emitters = [SignedDigitEmitter(0) for _ in range(n + m)]
        queues = [deque(header_symbols(0)) for _ in range(n + m)]
        order = _pair_order(n, m)
        target = next(order)
        precision = INITIAL_PRECISION
        pivot: int | None = None
        while True:
            while queues[target]:
                yield queues[target].popleft()
                target = next(order)
            while not all(r.header_done and r.digits >= precision for r in readers):
                read_reals_step(channels, readers)
            flat = [r.interval() for r in readers]
            grid = [flat[i * m : (i + 1) * m] for i in range(n)]
            _check_rank_one(grid, label)
            if pivot is None:
                pivot = _pivot_row(grid)
                if pivot is not None:
                    tape.annotate("pivot", pivot)
            factors = _factor(grid, pivot, precision) if pivot is not None else None
            if factors is None:
                if precision >= MAX_FACTOR_PRECISION:
                    raise FactorizationStall(f"{label}: no provably nonzero entry at precision {precision}")
                precision *= 2
                continue
            u, v = factors
            for emitter, queue, enclosure in zip(emitters, queues, u + v):
                queue.extend(emitter.feed(enclosure, limit=emitter.count + DIGIT_STEP))
            tape.annotate("precision", precision)
            precision += DIGIT_STEP

    return ReductionWitness(
        label,
        f"SEIGEN_{n}xSEIGEN_{m}",
        f"SEIGEN_{size}",
        _kronecker_machine(n, m),
        PrefixMachine(f"tensor-factor:{n}:{m}", post, NATURAL, REAL_ALPHABET),
        "eigenvectors of Kronecker products factor into eigenvectors",
    )


def llpo_power_to_seigen_witness(power: int) -> ReductionWitness:
    """LLPO^n <= SEIGEN_(2^n): products of ``llpo-seigen2`` followed by tensor witnesses.

    The source is the left-nested product ``LLPOx...xLLPO``.
    """

    if not 1 <= power <= MAX_LLPO_POWER:
        raise UnknownCatalogEntry(f"llpo-power ships 1 <= n <= {MAX_LLPO_POWER}")
    base = llpo_to_seigen2_witness()
    chain = base
    for step in range(1, power):
        size = 2**step
        chain = compose_reductions(product_reductions(chain, base), seigen_tensor_witness(size, 2))
    return chain


# MLPO and linear equations.


def mlpo_to_lineq_witness(n: int) -> ReductionWitness:
    """MLPO_(n+1) <= LINEQ_n_(n+1) with the bidiagonal matrix ``A_ii = x_i``, ``A_i,i+1 = x_(i+1)``.

    The post-processor answers the least 1-based index of a provably nonzero
    kernel component.

    Example:
        >>> from fractions import Fraction
        >>> from advice_kit.names import tuple_names
        >>> from advice_kit.spaces.reals import encode_rational
        >>> from advice_kit.reductions.witness import apply_reduction, solver_for
        >>> x = tuple_names([encode_rational(v) for v in (0, Fraction(1, 2), Fraction(1, 4))])
        >>> apply_reduction(mlpo_to_lineq_witness(2), solver_for("LINEQ_2_3", "canonical"), x, 3).symbols
        (1, 1, 1)
    """

    if n < 1:
        raise UnknownCatalogEntry("mlpo-lineq needs n >= 1")
    cols = n + 1
    outputs: List[Callable[[List[Interval]], Interval]] = []
    sources: List[int | None] = []
    for row in range(n):
        for col in range(cols):
            if col in (row, row + 1):
                outputs.append(lambda args, col=col: args[col])
                sources.append(col)
            else:
                outputs.append(lambda args: Interval.of(0))
                sources.append(None)
    pre = interval_tuple_machine(
        f"bidiagonal:{n}",
        [cols],
        outputs,
        lambda exps: [0 if s is None else exps[s] for s in sources],
    )

    def decide(vector: List[Interval]) -> int | None:
        for index, component in enumerate(vector, start=1):
            if component.excludes_zero():
                return index
        return None

    def post(tape: Tape) -> Iterator[int]:
        return _decide_by_rounds(tape, cols, decide, f"mlpo-lineq:{n}")

    return ReductionWitness(
        f"mlpo-lineq:{n}",
        f"MLPO_{cols}",
        f"LINEQ_{n}_{cols}",
        pre,
        PrefixMachine(f"nonzero-index:{cols}", post, NATURAL, NATURAL),
        "a nonzero kernel component marks a zero",
    )


# Choice.


def _cnat_pre(tape: Tape) -> Iterator[int]:
    for stage in count():
        entry = read_entry(tape)
        words = []
        if entry:
            words.append(interval_word(Fraction(entry[0]) + Fraction(1, 4), -1))
        words.append(interval_word(Fraction(stage) + Fraction(3, 4), -2))
        words.append(interval_word(-(2**stage), stage))
        yield from encode_entries(words)


def _cnat_post(tape: Tape) -> Iterator[int]:
    x_channel, y_channel = SplitTape(tape, 2).channels()
    reader = RealReader()
    while not reader.header_done or reader.interval().width() >= 2 * CHOICE_RADIUS:
        reader.feed(y_channel.read())
    enclosure = reader.interval()
    answer = max(floor(enclosure.mid() + Fraction(1, 4)), 0)
    tape.annotate("precision", reader.digits)
    yield from repeat_symbol(x_channel, answer)


def cnat_to_pcr_witness() -> ReductionWitness:
    """C_NAT <= PC_REAL.

    A remaining natural ``n`` stands for ``[n, n + 1/2]``: stage ``t`` excludes
    ``(t + 1/2, t + 1)`` and ``(-2^(t+1), 0)``, and an excluded ``n`` takes
    ``(n - 1/4, n + 3/4)`` with it. The answer is the natural whose block holds
    the returned real.

    Example:
        >>> from advice_kit.spaces.sets import closed_nat_only
        >>> from advice_kit.reductions.witness import apply_reduction, solver_for
        >>> w = cnat_to_pcr_witness()
        >>> apply_reduction(w, solver_for("PC_REAL", "right"), closed_nat_only([3]).name, 2).symbols
        (3, 3)
    """

    return ReductionWitness(
        "cnat-pcr",
        "C_NAT",
        "PC_REAL",
        PrefixMachine("nat-blocks", _cnat_pre, NATURAL, NATURAL),
        PrefixMachine("nearest-block", _cnat_post, NATURAL, NATURAL),
        "naturals as disjoint intervals of positive length",
    )


def pc_interval_to_cantor_witness() -> ReductionWitness:
    """PC_INTERVAL <= PC_CANTOR: pull the set back along binary expansions."""

    return ReductionWitness(
        "pc-interval-cantor",
        "PC_INTERVAL",
        "PC_CANTOR",
        binary_preimage_machine(),
        _on_answer(translate_binary_to_signed_machine(), "translate∘pi2"),
        "binary expansions preserve measure",
    )


def pc_cantor_to_interval_witness() -> ReductionWitness:
    """PC_CANTOR <= PC_INTERVAL: push the set into the fat Cantor set."""

    return ReductionWitness(
        "pc-cantor-interval",
        "PC_CANTOR",
        "PC_INTERVAL",
        fat_embed_closed_machine(),
        _on_answer(fat_address_machine(), "fat-address∘pi2"),
        "the fat Cantor set carries half the Lebesgue measure",
    )


def pc_cantor_interval_witnesses() -> Tuple[ReductionWitness, ReductionWitness]:
    """Both directions, Cantor into interval first."""

    return pc_cantor_to_interval_witness(), pc_interval_to_cantor_witness()


_SIMPLE: Dict[str, Callable[[], ReductionWitness]] = {
    "llpo-seigen2": llpo_to_seigen2_witness,
    "seigen-tensor": lambda: seigen_tensor_witness(2, 2),
    "mlpo-lineq": lambda: mlpo_to_lineq_witness(2),
    "cnat-pcr": cnat_to_pcr_witness,
    "pc-interval-cantor": pc_interval_to_cantor_witness,
    "pc-cantor-interval": pc_cantor_to_interval_witness,
}


def witness_ids() -> List[str]:
    return sorted(_SIMPLE) + ["seigen-tensor:<n>:<m>", "mlpo-lineq:<n>", "llpo-power:<n>"]


def get_witness(witness_id: str) -> ReductionWitness:
    """Look up a shipped witness.

    Example:
        >>> w = get_witness("llpo-power:2")
        >>> w.source, w.target
        ('LLPOxLLPO', 'SEIGEN_4')
    """

    key = witness_id.strip()
    if key in _SIMPLE:
        return _SIMPLE[key]()
    head, _, rest = key.partition(":")
    parts = rest.split(":") if rest else []
    if not parts or not all(p.isdigit() for p in parts):
        raise UnknownCatalogEntry(f"unknown witness {witness_id!r}; known: {', '.join(witness_ids())}")
    numbers = [int(p) for p in parts]
    match head, len(numbers):
        case "seigen-tensor", 2:
            return seigen_tensor_witness(*numbers)
        case "mlpo-lineq", 1:
            return mlpo_to_lineq_witness(numbers[0])
        case "llpo-power", 1:
            return llpo_power_to_seigen_witness(numbers[0])
    raise UnknownCatalogEntry(f"unknown witness {witness_id!r}; known: {', '.join(witness_ids())}")
