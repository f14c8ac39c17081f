from __future__ import annotations

from math import ceil

import pytest

from advice_kit.errors import AlphabetMismatch, FuelExhausted
from advice_kit.machines.catalog import (
    bit_doubling_machine,
    bitflip_machine,
    block_decoder_machine,
    get_machine,
    identity_machine,
    leading_ones_machine,
    machine_ids,
    never_machine,
    padded_delay_machine,
    pi2_machine,
    repeated_counts_machine,
)
from advice_kit.machines.machine import Diverged, compose_machines, run_machine, trace_machine
from advice_kit.machines.tapes import PipeTape, PrefixTape, SplitTape, StepCounter, TeeTape
from advice_kit.machines.wiring import (
    fan_out_machine,
    flatten_machine,
    nest_machine,
    parallel_machine,
    projection_machine,
)
from advice_kit.names import BINARY, NATURAL, Prefix, constant_name, eventually_periodic, pair_names, tuple_names, zero_name

CANTOR_MACHINES = ["identity", "bitflip", "bit-doubling", "padded-delay", "first-bit", "pi1", "pi2"]
DRAWS = 1000


def test_identity_returns_first_k_symbols():
    x = eventually_periodic(BINARY, [1, 0, 1], [0])
    assert run_machine(identity_machine(), x, 4) == Prefix(BINARY, (1, 0, 1, 0))


def test_never_machine_diverges():
    result = run_machine(never_machine(), zero_name(), 1, fuel=1000)
    assert isinstance(result, Diverged)
    assert result.partial.symbols == ()


def test_k_zero_needs_no_steps():
    trace = trace_machine(never_machine(), zero_name(), 0, fuel=10)
    assert trace.output == Prefix(BINARY, ())
    assert trace.steps == 0


def test_runs_are_deterministic(random_periodic):
    x = random_periodic()
    first = trace_machine(bit_doubling_machine(), x, 17)
    second = trace_machine(bit_doubling_machine(), x, 17)
    assert first == second


@pytest.mark.parametrize("k", [1, 2, 5, 16])
def test_step_regressions(k):
    x = eventually_periodic(BINARY, [], [1, 0])
    assert trace_machine(identity_machine(), x, k).steps == 2 * k
    assert trace_machine(pi2_machine(), pair_names(x, x), k).steps == 3 * k
    assert trace_machine(bit_doubling_machine(), x, k).steps == ceil(k / 2) + k


def test_padded_delay_ticks_before_each_bit():
    shift = 4
    steps = trace_machine(padded_delay_machine(shift), zero_name(), 3).steps
    assert steps == sum(2 + 2 ** (k + shift) for k in (1, 2, 3))


def test_padded_delay_runs_out_of_fuel():
    assert isinstance(run_machine(padded_delay_machine(), zero_name(), 12, fuel=10_000), Diverged)


@pytest.mark.parametrize("machine_id", CANTOR_MACHINES)
def test_monotone_on_prefix_pairs(machine_id, rng):
    machine = get_machine(machine_id)
    for _ in range(DRAWS):
        length = int(rng.integers(0, 20))
        longer = rng.integers(0, 2, length + int(rng.integers(0, 10))).tolist()
        short = Prefix(BINARY, tuple(longer[:length]))
        long = Prefix(BINARY, tuple(longer))
        assert machine.step(short).is_prefix_of(machine.step(long))


def test_step_count_is_monotone_in_input_length():
    machine = bit_doubling_machine()
    counts = [machine.step_count(Prefix(BINARY, (1,) * n)) for n in range(8)]
    assert counts == sorted(counts)


@pytest.mark.parametrize("machine_id", ["identity", "bitflip", "bit-doubling", "pi2"])
def test_declared_lookahead_suffices(machine_id):
    machine = get_machine(machine_id)
    for k in range(1, 9):
        needed = machine.declared_lookahead(k)
        assert needed is not None
        assert len(machine.step(Prefix(BINARY, (1,) * needed))) >= k


def test_composition_of_bitflips_is_identity():
    twice = compose_machines(bitflip_machine(), bitflip_machine())
    x = eventually_periodic(BINARY, [0, 1, 1], [0, 1])
    assert run_machine(twice, x, 10) == x.take(10)
    assert twice.declared_lookahead(5) == 5


def test_composition_charges_two_steps_per_transfer():
    twice = compose_machines(identity_machine(), identity_machine())
    assert trace_machine(twice, zero_name(), 4).steps == 4 * (1 + 2 + 1)


def test_composition_checks_alphabets():
    with pytest.raises(AlphabetMismatch):
        compose_machines(bitflip_machine(), leading_ones_machine())


def test_leading_ones_counts():
    x = eventually_periodic(BINARY, [1, 1, 1, 0], [0])
    assert run_machine(leading_ones_machine(), x, 3).symbols == (3, 3, 3)


def test_repeated_counts_reads_runs():
    x = eventually_periodic(BINARY, [1, 0, 0, 1, 1, 0], [0])
    assert run_machine(repeated_counts_machine(), x, 4).symbols == (1, 0, 2, 0)


def test_block_decoder_rejects_large_blocks():
    # size 3: blocks of two bits, 11 is rejected
    x = eventually_periodic(BINARY, [1, 1, 1, 0], [0])
    assert run_machine(block_decoder_machine(3), x, 2).symbols == (2, 2)


def test_projection_and_regrouping():
    x = tuple_names([constant_name(s, NATURAL) for s in (1, 2, 3)])
    assert run_machine(projection_machine(2, 3), x, 2).symbols == (3, 3)
    nested = run_machine(nest_machine(3), x, 8)
    assert nested.symbols == (1, 2, 1, 3, 1, 2, 1, 3)
    flat = run_machine(compose_machines(flatten_machine(3), nest_machine(3)), x, 6)
    assert flat.symbols == (1, 2, 3, 1, 2, 3)


def test_parallel_and_fan_out():
    x = pair_names(zero_name(), constant_name(1, BINARY))
    both = parallel_machine([bitflip_machine(), identity_machine()])
    assert run_machine(both, x, 4).symbols == (1, 1, 1, 1)
    fan = fan_out_machine([identity_machine(), bitflip_machine()])
    assert run_machine(fan, zero_name(), 4).symbols == (0, 1, 0, 1)


def test_tapes_share_one_counter():
    counter = StepCounter(fuel=100)
    tape = PrefixTape((1, 2, 3, 4), counter)
    even, odd = SplitTape(tape, 2).channels()
    assert (odd.read(), even.read()) == (2, 1)
    assert counter.steps == 2
    first, second = TeeTape(PrefixTape((7, 8), counter)).branches(2)
    assert first.read() == 7 and second.read() == 7
    assert counter.steps == 3


def test_pipe_tape_costs_two_per_symbol():
    counter = StepCounter(fuel=100)
    pipe = PipeTape(iter([5, 6]), counter)
    assert [pipe.read(), pipe.read()] == [5, 6]
    assert counter.steps == 4


def test_counter_raises_past_fuel():
    counter = StepCounter(fuel=1)
    counter.charge()
    with pytest.raises(FuelExhausted):
        counter.charge()


def test_catalog_ids_resolve():
    for machine_id in machine_ids():
        if machine_id.startswith("block:"):
            continue
        assert get_machine(machine_id).machine_id
    assert get_machine("block:5").output_alphabet.size == 5
