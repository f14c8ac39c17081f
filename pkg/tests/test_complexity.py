from __future__ import annotations

import pytest

from advice_kit.complexity import (
    BoundVerdict,
    ComplexityProfile,
    ProfileMode,
    exhaustive_inputs,
    fnp_witness,
    poly_bound_check,
    sample_inputs,
    steps_to_k_bits,
    tau_profile,
)
from advice_kit.errors import AdviceKitError
from advice_kit.machines.catalog import (
    bitflip_machine,
    get_machine,
    identity_machine,
    leading_ones_machine,
    never_machine,
    padded_delay_machine,
    pi2_machine,
)
from advice_kit.machines.machine import Diverged, run_machine
from advice_kit.names import pair_names, zero_name
from advice_kit.problems.oracles import closed_of
from advice_kit.spaces.descriptors import CANTOR
from advice_kit.spaces.sets import Membership, closed_consistent_at_depth

FNP_MACHINES = ["identity", "bitflip", "bit-doubling", "first-bit", "pi1", "pi2"]


def test_identity_profile_is_exact():
    profile = tau_profile(identity_machine(), 16)
    assert profile.mode is ProfileMode.EXACT
    assert [(p.k, p.max_steps) for p in profile.points] == [(k, 2 * k) for k in range(1, 17)]
    assert poly_bound_check(profile, 2, 1).verdict is BoundVerdict.ACCEPT
    rejected = poly_bound_check(profile, 1, 1)
    assert (rejected.verdict, rejected.violating_k) == (BoundVerdict.REJECT, 1)


def test_profiles_never_decrease():
    profile = tau_profile(get_machine("bit-doubling"), 10)
    steps = [p.max_steps for p in profile.points]
    assert steps == sorted(steps)


def test_padded_delay_rejects_every_small_polynomial():
    profile = tau_profile(padded_delay_machine(), 12, inputs=sample_inputs(4, seed=1))
    assert profile.mode is ProfileMode.SAMPLED_LOWER_BOUND
    assert all(p.max_steps >= 2**p.k for p in profile.points)
    for c in range(1, 11):
        for d in range(1, 11):
            assert poly_bound_check(profile, c, d).verdict is BoundVerdict.REJECT


def test_fnp_witness_of_padded_delay_is_fast():
    g, _ = fnp_witness(padded_delay_machine())
    profile = tau_profile(g, 6)
    assert profile.mode is ProfileMode.EXACT
    assert poly_bound_check(profile, 8, 1).verdict is BoundVerdict.ACCEPT


def test_sampled_pass_is_inconclusive():
    profile = tau_profile(identity_machine(), 4, inputs=sample_inputs(2))
    assert poly_bound_check(profile, 2, 1).verdict is BoundVerdict.INCONCLUSIVE_ACCEPT


def test_steps_to_k_bits():
    assert steps_to_k_bits(pi2_machine(), zero_name(), 0) == 0
    assert steps_to_k_bits(bitflip_machine(), zero_name(), 4) == 8
    assert isinstance(steps_to_k_bits(never_machine(), zero_name(), 1, fuel=100), Diverged)
    with pytest.raises(ValueError):
        steps_to_k_bits(identity_machine(), zero_name(), -1)


def test_exhaustive_inputs_need_a_small_lookahead():
    assert len(exhaustive_inputs(identity_machine(), 3)) == 8
    with pytest.raises(AdviceKitError):
        exhaustive_inputs(pi2_machine(), 12)
    with pytest.raises(AdviceKitError):
        exhaustive_inputs(leading_ones_machine(), 2)


def test_profiling_a_machine_that_stalls():
    with pytest.raises(AdviceKitError):
        tau_profile(never_machine(), 1, inputs=[zero_name()], fuel=100)


def test_bound_arguments_and_empty_profiles():
    with pytest.raises(ValueError):
        poly_bound_check(ComplexityProfile("none", (), "none"), 0, 1)
    assert tau_profile(identity_machine(), 0).points == ()


@pytest.mark.parametrize("machine_id", FNP_MACHINES)
def test_fnp_witness_is_sound(machine_id, random_periodic):
    machine = get_machine(machine_id)
    g, advice_map = fnp_witness(machine)
    for _ in range(8):
        x = random_periodic()
        fx = machine.on(x)
        assert run_machine(g, pair_names(x, fx), 32).symbols == fx.take(32).symbols
        advice = closed_of(CANTOR, advice_map.on(x))
        for length in range(1, 9):
            word = fx.take(length).symbols
            assert closed_consistent_at_depth(advice, word, length) is Membership.CONSISTENT
            wrong = word[:-1] + (1 - word[-1],)
            assert closed_consistent_at_depth(advice, wrong, length) is Membership.EXCLUDED


def test_fnp_witness_with_padded_delay():
    machine = padded_delay_machine()
    _, advice_map = fnp_witness(machine)
    advice = closed_of(CANTOR, advice_map.on(zero_name()))
    assert closed_consistent_at_depth(advice, (1,), 1) is Membership.EXCLUDED
    assert closed_consistent_at_depth(advice, (0, 0, 0), 3) is Membership.CONSISTENT
