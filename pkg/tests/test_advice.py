from __future__ import annotations

from fractions import Fraction

import pytest

from advice_kit.advice.catalog import advice_machine_ids, get_advice_machine
from advice_kit.advice.combinators import (
    Direction,
    ProductMode,
    change_advice_space,
    choice_to_effective_advice,
    compose_advice_machines,
    effective_advice_to_choice,
    effective_advice_to_choice_reduction,
    product_advice_machines,
    transport_advice_along_reduction,
)
from advice_kit.advice.machine import AdviceMachine, run_with_advice, sound_on
from advice_kit.advice.schemes import AdviceFamily, AdviceScheme, parse_scheme
from advice_kit.advice.sets import DiscreteSet, SingletonSet
from advice_kit.errors import MalformedName, SchemeMismatch, UnknownCatalogEntry
from advice_kit.machines.catalog import bitflip_machine, identity_machine
from advice_kit.machines.machine import Diverged
from advice_kit.names import BINARY, Alphabet, constant_name, eventually_periodic, pair_names, prepend_name, tuple_names, zero_name
from advice_kit.problems import Verdict
from advice_kit.problems.catalog import get_problem
from advice_kit.reductions.witness import apply_reduction, identity_witness, solver_for
from advice_kit.spaces.descriptors import CANTOR, NAT, finite_space
from advice_kit.spaces.reals import decode_real_prefix, encode_rational
from advice_kit.spaces.sets import closed_nat_only, closed_set

FIXTURES = 50


def one_at(index: int):
    return eventually_periodic(BINARY, [0] * index + [1], [0])


def all_consistent(results) -> bool:
    return bool(results) and all(verdict is Verdict.CONSISTENT for _, verdict in results)


@pytest.mark.parametrize("value, branch", [(Fraction(1, 3), "{1}"), (Fraction(3, 2), "{0}"), (Fraction(0), "{1}")])
def test_circle_with_correct_advice(value, branch):
    circle = get_advice_machine("circle")
    x = encode_rational(value)
    assert circle.advice_set(x).describe() == branch
    assert all_consistent(sound_on(circle, x, 40))


def test_circle_with_wrong_advice_is_refuted():
    circle = get_advice_machine("circle")
    x = encode_rational(Fraction(1, 3))
    out = run_with_advice(circle, x, constant_name(0, circle.core.input_alphabet), 40)
    assert decode_real_prefix(out).contains(Fraction(-2, 3))
    assert circle.problem.verify(x, out, 40) is Verdict.REFUTED


def test_llpo_with_answer_advice():
    llpo = get_advice_machine("llpo-finite")
    x = pair_names(zero_name(), one_at(2))
    assert llpo.advice_set(x).describe() == "{0}"
    assert all_consistent(sound_on(llpo, x, 16))
    assert get_advice_machine("llpo-random").scheme.random


def test_lpo_count_decides_every_component():
    machine = get_advice_machine("lpo-count:3")
    x = tuple_names([zero_name(), one_at(1), zero_name()])
    assert machine.advice_set(x).describe() == "{2}"
    assert all_consistent(sound_on(machine, x, 12))
    advice = constant_name(2, Alphabet.finite(4))
    assert run_with_advice(machine, x, advice, 6).symbols == (0, 1, 0, 0, 1, 0)


def test_lpo_count_with_wrong_advice():
    machine = get_advice_machine("lpo-count:3")
    x = tuple_names([zero_name(), one_at(1), zero_name()])
    too_many = run_with_advice(machine, x, constant_name(3, Alphabet.finite(4)), 12)
    assert machine.problem.verify(x, too_many, 12) is Verdict.REFUTED
    too_few = run_with_advice(machine, x, constant_name(0, Alphabet.finite(4)), 3, fuel=5_000)
    assert isinstance(too_few, Diverged)


def test_effective_nat_choice_advice():
    machine = get_advice_machine("c-nat")
    x = closed_nat_only([3]).name
    assert machine.scheme.effective
    advice = machine.advice_set(x)
    assert advice.contains(constant_name(3), 16)
    assert not advice.contains(constant_name(4), 16)
    assert all_consistent(sound_on(machine, x, 8))


def test_positive_cantor_choice_members():
    machine = get_advice_machine("pc-cantor")
    assert machine.scheme.label() == "advice:random-cantor"
    x = closed_set(CANTOR, [(1,)]).name
    members = machine.advice_set(x).members(3)
    assert [m.take(3).symbols for m in members] == [(0, 0, 0), (0, 0, 0), (0, 1, 1)]
    assert all_consistent(sound_on(machine, x, 12))


def test_identity_and_lineq_machines():
    assert all_consistent(sound_on(get_advice_machine("id-real"), encode_rational(Fraction(1, 3)), 24))
    assert all_consistent(sound_on(get_advice_machine("id-real-bit"), encode_rational(Fraction(-2)), 24))
    lineq = get_advice_machine("lineq-oracle:1:2")
    x = tuple_names([encode_rational(1), encode_rational(2)])
    assert len(sound_on(lineq, x, 24)) == 3
    assert all_consistent(sound_on(lineq, x, 24))


def test_catalog_lookup():
    assert "circle" in advice_machine_ids()
    assert get_advice_machine("lpo-count:3").problem_id == "LPO^3"
    for machine_id in ("spiral", "lpo-count:x", "lineq-oracle:1"):
        with pytest.raises(UnknownCatalogEntry):
            get_advice_machine(machine_id)


@pytest.mark.parametrize(
    "literal, label",
    [
        ("advice:finite:3", "advice:finite:3"),
        ("advice:nat", "advice:discrete(nat)"),
        ("advice:closed-effective", "advice:closed-effective(nat)"),
        ("advice:random-cantor", "advice:random-cantor"),
    ],
)
def test_scheme_literals(literal, label):
    assert parse_scheme(literal).label() == label


@pytest.mark.parametrize("literal", ["finite:3", "advice:sideways"])
def test_bad_scheme_literals(literal):
    with pytest.raises(MalformedName):
        parse_scheme(literal)


def test_scheme_invariants():
    with pytest.raises(SchemeMismatch):
        AdviceScheme(CANTOR, AdviceFamily.RANDOM_POSITIVE)
    with pytest.raises(SchemeMismatch):
        AdviceMachine(
            "bare",
            "C_NAT",
            AdviceScheme(NAT, AdviceFamily.EFFECTIVE_CLOSED),
            identity_machine(),
            lambda x: DiscreteSet(NAT, (0,)),
        )


def test_advice_set_membership():
    two = finite_space(2)
    assert DiscreteSet(two, (0, 1)).contains(constant_name(1), 8)
    assert not DiscreteSet(two, (0,)).contains(eventually_periodic(BINARY, [0], [1]), 8)
    point = eventually_periodic(BINARY, [1], [0])
    assert SingletonSet(point).contains(point, 8)


def test_composed_advice_machine():
    composed = compose_advice_machines(get_advice_machine("circle"), get_advice_machine("id-real"))
    assert composed.problem_id == "CIRCLE∘ID_REAL"
    for value in (Fraction(1, 3), Fraction(3, 2)):
        assert all_consistent(sound_on(composed, encode_rational(value), 32))


def test_composition_needs_injective_inner_advice():
    with pytest.raises(SchemeMismatch):
        compose_advice_machines(get_advice_machine("circle"), get_advice_machine("pc-interval"))


def test_product_of_advice_machines():
    llpo = get_advice_machine("llpo-finite")
    both = product_advice_machines(llpo, llpo)
    x = pair_names(pair_names(zero_name(), one_at(1)), pair_names(one_at(0), zero_name()))
    assert both.problem_id == "LLPOxLLPO"
    assert all_consistent(sound_on(both, x, 12))
    random_pair = product_advice_machines(get_advice_machine("llpo-random"), get_advice_machine("llpo-random"))
    assert random_pair.scheme.random


def test_coproduct_dispatches_on_the_tag():
    either = product_advice_machines(get_advice_machine("id-nat"), get_advice_machine("llpo-finite"), ProductMode.COPRODUCT)
    x = prepend_name([1], pair_names(zero_name(), one_at(0)))
    assert all_consistent(sound_on(either, x, 8))
    assert either.advice_set(x).members(1)[0].take(3).symbols == (1, 0, 0)


def test_changing_the_advice_space():
    llpo = get_advice_machine("llpo-finite")
    flip = bitflip_machine()
    moved = change_advice_space(llpo, flip, llpo.scheme, lambda m: flip.on(m))
    x = pair_names(zero_name(), one_at(1))
    advice = moved.advice_set(x)
    assert advice.contains(constant_name(1, BINARY), 8)
    assert not advice.contains(constant_name(0, BINARY), 8)
    assert all_consistent(sound_on(moved, x, 12))


def test_transport_along_a_reduction():
    moved = transport_advice_along_reduction(identity_witness("LLPO"), get_advice_machine("llpo-finite"))
    assert moved.problem_id == "LLPO"
    assert all_consistent(sound_on(moved, pair_names(one_at(3), zero_name()), 12))


def test_effective_advice_is_a_reduction_to_choice():
    machine = get_advice_machine("c-nat")
    witness = effective_advice_to_choice(machine)
    assert (witness.source, witness.target) == ("C_NAT", "C_NAT")
    back = choice_to_effective_advice(witness)
    assert back.scheme.effective
    assert all_consistent(sound_on(back, closed_nat_only([2, 5]).name, 8))
    assert isinstance(effective_advice_to_choice_reduction(machine, Direction.TO_REDUCTION), type(witness))


def test_only_effective_advice_converts():
    with pytest.raises(SchemeMismatch):
        effective_advice_to_choice(get_advice_machine("llpo-finite"))
    with pytest.raises(SchemeMismatch):
        effective_advice_to_choice_reduction(get_advice_machine("c-nat"), Direction.FROM_REDUCTION)


def test_composed_advice_machine_on_many_rationals(rng):
    composed = compose_advice_machines(get_advice_machine("circle"), get_advice_machine("id-real"))
    for _ in range(FIXTURES):
        denominator = int(rng.integers(1, 13))
        value = Fraction(int(rng.integers(0, denominator)), denominator)
        assert all_consistent(sound_on(composed, encode_rational(value), 32))


def _llpo_instance(rng):
    side = one_at(int(rng.integers(0, 10)))
    match int(rng.integers(0, 3)):
        case 0:
            return pair_names(zero_name(), side)
        case 1:
            return pair_names(side, zero_name())
    return pair_names(zero_name(), zero_name())


def test_product_of_advice_machines_on_many_fixtures(rng):
    llpo = get_advice_machine("llpo-finite")
    both = product_advice_machines(llpo, llpo)
    for _ in range(FIXTURES):
        x = pair_names(_llpo_instance(rng), _llpo_instance(rng))
        assert all_consistent(sound_on(both, x, 16))


def test_effective_advice_round_trip_on_many_sets(rng):
    machine = get_advice_machine("c-nat")
    witness = effective_advice_to_choice(machine)
    back = choice_to_effective_advice(witness)
    solve = solver_for("C_NAT")
    for _ in range(FIXTURES):
        kept = {int(v) for v in rng.integers(0, 10, size=int(rng.integers(1, 4)))}
        x = closed_nat_only(kept).name
        assert all_consistent(sound_on(back, x, 8))
        out = apply_reduction(witness, solve, x, 8)
        assert out.symbols[0] in kept
        assert get_problem("C_NAT").verify(x, out, 16) is Verdict.CONSISTENT
