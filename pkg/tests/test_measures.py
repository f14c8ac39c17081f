from __future__ import annotations

import math
from fractions import Fraction
from itertools import product as words_of

import pytest

from advice_kit.advice.catalog import get_advice_machine
from advice_kit.advice.machine import sound_on
from advice_kit.errors import MalformedName, SchemeMismatch
from advice_kit.intervals import Interval
from advice_kit.measures.fatcantor import (
    build_fat_cantor,
    embedded_cylinder_measure,
    fat_address_machine,
    fat_embed_name,
    measure_at_depth,
    stage_interval,
    stage_width,
)
from advice_kit.measures.lifting import (
    binary_expansion,
    cantor_advice_to_interval,
    interval_advice_to_cantor,
    lift_random_advice_to_cantor,
)
from advice_kit.measures.montecarlo import Z99, closed_measure_bounds, monte_carlo_success, wilson_interval
from advice_kit.measures.sampling import fair_bits, sample_advice, sample_trial
from advice_kit.measures.specs import (
    BAIRE_GEOMETRIC,
    CANTOR_UNIFORM,
    LEBESGUE_REAL,
    LEBESGUE_UNIT,
    NAT_GEOMETRIC,
    MeasureKind,
    MeasureSpec,
    finite_uniform,
    parse_measure,
)
from advice_kit.measures.transport import TransportMap, closed_set_transport, dyadic_cell, transport_spaces
from advice_kit.names import BINARY, eventually_periodic, zero_name
from advice_kit.problems import Verdict
from advice_kit.spaces.descriptors import CANTOR, UNIT_INTERVAL
from advice_kit.spaces.literals import parse_set_literal
from advice_kit.spaces.reals import real_enclosure
from advice_kit.spaces.sets import Membership, closed_consistent_at_depth, closed_nat_only, closed_set


def all_consistent(results) -> bool:
    return bool(results) and all(verdict is Verdict.CONSISTENT for _, verdict in results)


@pytest.mark.parametrize("depth", range(0, 11))
def test_fat_cantor_measure_is_exact(depth):
    stage = build_fat_cantor(depth)
    assert stage.measure == measure_at_depth(depth)
    assert all(interval.width() == stage_width(depth) for interval in stage.intervals)


@pytest.mark.slow
def test_fat_cantor_measure_formula_to_depth_twenty():
    assert build_fat_cantor(20).measure == measure_at_depth(20)


@pytest.mark.parametrize("length", range(0, 5))
def test_cylinder_images_have_dyadic_measure(length):
    for word in words_of((0, 1), repeat=length):
        assert embedded_cylinder_measure(word) == Fraction(1, 2 ** (length + 1))


def test_stage_locates_addresses_and_gaps():
    stage = build_fat_cantor(3)
    assert stage.locate(stage_interval((1, 0, 1)).mid()) == (1, 0, 1)
    assert stage.locate(Fraction(1, 2)) is None
    assert build_fat_cantor(1).gaps() == [Interval.of(Fraction(3, 8), Fraction(5, 8))]
    with pytest.raises(ValueError):
        build_fat_cantor(-1)


@pytest.mark.parametrize("prefix, period", [([1, 0, 1], [0]), ([0], [1]), ([], [0, 1])])
def test_fat_cantor_address_round_trip(prefix, period):
    address = eventually_periodic(BINARY, prefix, period)
    back = fat_address_machine().on(fat_embed_name(address))
    assert back.take(8) == address.take(8)


@pytest.mark.parametrize(
    "text, label",
    [
        ("cantor", "cantor"),
        ("Lebesgue", "lebesgue"),
        ("finite:4", "finite:4"),
        ("nat-geometric*baire-geometric", "nat-geometric*baire-geometric"),
    ],
)
def test_parse_measure(text, label):
    assert parse_measure(text).label() == label


@pytest.mark.parametrize("text", ["gaussian", "finite:x", "finite:0"])
def test_bad_measures(text):
    with pytest.raises(MalformedName):
        parse_measure(text)


def test_cylinder_masses():
    assert CANTOR_UNIFORM.cylinder_mass((0, 1, 1)) == Fraction(1, 8)
    assert BAIRE_GEOMETRIC.cylinder_mass((0, 1)) == Fraction(1, 8)
    assert NAT_GEOMETRIC.cylinder_mass((0,)) == Fraction(1, 2)
    assert NAT_GEOMETRIC.cylinder_mass((1, 2)) == 0
    assert finite_uniform(3).cylinder_mass((2, 2)) == Fraction(1, 3)
    assert finite_uniform(3).cylinder_mass((3,)) == 0
    with pytest.raises(ValueError):
        LEBESGUE_UNIT.cylinder_mass((0,))


def test_samplable_and_spaces():
    assert not LEBESGUE_REAL.samplable
    assert not MeasureSpec.pair(CANTOR_UNIFORM, LEBESGUE_REAL).samplable
    assert LEBESGUE_UNIT.space == UNIT_INTERVAL
    with pytest.raises(MalformedName):
        MeasureSpec(MeasureKind.PRODUCT, left=CANTOR_UNIFORM)


def test_samplers_decode_fair_bits():
    assert sample_advice(NAT_GEOMETRIC, zero_name()).take(3).symbols == (0, 0, 0)
    assert sample_advice(NAT_GEOMETRIC, eventually_periodic(BINARY, [1, 1], [0])).symbol(0) == 2
    bits = eventually_periodic(BINARY, [1, 0, 0, 1, 1, 0], [0])
    assert sample_advice(CANTOR_UNIFORM, bits) == bits
    assert sample_advice(BAIRE_GEOMETRIC, bits).take(3).symbols == (1, 0, 2)
    half = sample_advice(LEBESGUE_UNIT, eventually_periodic(BINARY, [1], [0]))
    assert real_enclosure(half, 20).contains(Fraction(1, 2))
    with pytest.raises(ValueError):
        sample_advice(LEBESGUE_REAL, bits)


def test_product_sampler_splits_the_bits():
    both = sample_advice(MeasureSpec.pair(NAT_GEOMETRIC, CANTOR_UNIFORM), eventually_periodic(BINARY, [1, 1, 1], [0]))
    assert both.take(4).symbols == (2, 1, 2, 0)


def test_trial_streams_are_independent_and_reproducible():
    assert fair_bits(7, 3).take(64) == fair_bits(7, 3).take(64)
    assert fair_bits(7, 3).take(64) != fair_bits(7, 4).take(64)
    draws = [sample_trial(finite_uniform(3), 5, trial).symbol(0) for trial in range(40)]
    assert set(draws) <= {0, 1, 2}


@pytest.mark.slow
def test_geometric_sampler_frequencies():
    draws = 100_000
    counts = [0] * 9
    total = 0
    for trial in range(draws):
        n = sample_trial(NAT_GEOMETRIC, 11, trial).symbol(0)
        total += n
        if n < len(counts):
            counts[n] += 1
    for n, seen in enumerate(counts):
        p = 2 ** (-n - 1)
        assert abs(seen - draws * p) <= 3 * math.sqrt(draws * p * (1 - p))
    assert abs(total / draws - 1) <= 3 * math.sqrt(2 / draws)


@pytest.mark.slow
def test_cantor_sampler_cylinder_frequencies():
    draws = 100_000
    counts: dict[tuple[int, ...], int] = {}
    for trial in range(draws):
        word = sample_trial(CANTOR_UNIFORM, 12, trial).take(6).symbols
        for length in range(1, 7):
            counts[word[:length]] = counts.get(word[:length], 0) + 1
    # 126 cylinders are checked at once, hence 4 sigma
    for word, seen in counts.items():
        p = 2 ** -len(word)
        assert abs(seen - draws * p) <= 4 * math.sqrt(draws * p * (1 - p))


def test_binary_expansions():
    assert binary_expansion(Fraction(1, 4)).take(4).symbols == (0, 1, 0, 0)
    assert binary_expansion(Fraction(0)).take(2).symbols == (0, 0)
    with pytest.raises(ValueError):
        binary_expansion(Fraction(3, 2))


def test_lifting_geometric_advice_to_cantor():
    lifted = lift_random_advice_to_cantor(get_advice_machine("c-nat-geometric"))
    assert lifted.scheme.measure == CANTOR_UNIFORM
    assert all_consistent(sound_on(lifted, closed_nat_only([0, 4]).name, 8))


@pytest.mark.parametrize("machine_id", ["llpo-finite", "pc-cantor"])
def test_lifting_needs_a_decodable_measure(machine_id):
    with pytest.raises(SchemeMismatch):
        lift_random_advice_to_cantor(get_advice_machine(machine_id))


def test_interval_and_cantor_advice_are_interchangeable():
    to_cantor = interval_advice_to_cantor(get_advice_machine("pc-interval"))
    assert to_cantor.scheme.label() == "advice:random-cantor"
    interval_set = parse_set_literal("closed{space: interval; complement: 1/2@-2}").name
    assert all_consistent(sound_on(to_cantor, interval_set, 24))

    to_interval = cantor_advice_to_interval(get_advice_machine("pc-cantor"))
    assert to_interval.scheme.measure == LEBESGUE_UNIT
    assert all_consistent(sound_on(to_interval, closed_set(CANTOR, [(1,)]).name, 8))

    with pytest.raises(SchemeMismatch):
        interval_advice_to_cantor(get_advice_machine("pc-cantor"))
    with pytest.raises(SchemeMismatch):
        cantor_advice_to_interval(get_advice_machine("pc-interval"))


def test_dyadic_cells():
    assert dyadic_cell(()) == Interval.of(0, 1)
    assert dyadic_cell((0, 1, 1)) == Interval.of(Fraction(3, 8), Fraction(1, 2))


def test_full_cantor_space_lands_on_the_fat_cantor_set():
    image = closed_set_transport(parse_set_literal("closed{}"), TransportMap.FAT_EMBED)
    assert image.space == UNIT_INTERVAL
    assert closed_consistent_at_depth(image, Interval.of(Fraction(1, 2)), 8) is Membership.EXCLUDED
    assert closed_consistent_at_depth(image, Interval.of(0), 8) is Membership.CONSISTENT
    assert closed_consistent_at_depth(image, Interval.of(1), 8) is Membership.CONSISTENT


def test_interval_sets_pull_back_to_fat_cantor_addresses():
    outer = parse_set_literal("closed{space: interval; complement: 1/2@-2}")
    addresses = closed_set_transport(outer, TransportMap.FAT_ADDRESS)
    assert transport_spaces(TransportMap.FAT_ADDRESS) == (UNIT_INTERVAL, CANTOR)
    assert closed_consistent_at_depth(addresses, (0, 1, 1), 8) is Membership.EXCLUDED
    assert closed_consistent_at_depth(addresses, (1, 0, 0), 8) is Membership.EXCLUDED
    assert closed_consistent_at_depth(addresses, (0, 0, 0), 8) is Membership.CONSISTENT


def test_wilson_quantile_is_the_two_sided_normal_99():
    assert Z99 == pytest.approx(2.5758293, abs=1e-6)
    low, high = wilson_interval(30, 100)
    assert (low, high) == pytest.approx(wilson_interval(30, 100, z=2.5758293035489004))


def test_wilson_interval_bounds():
    low, high = wilson_interval(0, 10)
    assert low == pytest.approx(0.0, abs=1e-12) and 0 < high < 1
    assert wilson_interval(10, 10)[1] == pytest.approx(1.0)
    with pytest.raises(ValueError):
        wilson_interval(1, 0)


def test_monte_carlo_on_half_the_cantor_space():
    pc = get_advice_machine("pc-cantor")
    half = parse_set_literal("closed{complement: 1}").name
    result = monte_carlo_success(pc, half, trials=400, depth=8, seed=42)
    assert result.trials == 400
    assert 0.35 < result.point_estimate < 0.65
    low, high = result.wilson99
    assert low <= result.point_estimate <= high
    assert result.epsilon_lower_bound == low


def test_monte_carlo_does_not_depend_on_jobs():
    pc = get_advice_machine("pc-cantor")
    quarter = parse_set_literal("closed{complement: 1; 0,1}").name
    serial = monte_carlo_success(pc, quarter, trials=64, depth=6, seed=3)
    threaded = monte_carlo_success(pc, quarter, trials=64, depth=6, seed=3, jobs=4)
    assert serial == threaded


def test_monte_carlo_needs_samplable_random_advice():
    full = parse_set_literal("closed{}").name
    with pytest.raises(SchemeMismatch):
        monte_carlo_success(get_advice_machine("c-nat"), closed_nat_only([1]).name, trials=4, depth=4)
    with pytest.raises(SchemeMismatch):
        monte_carlo_success(get_advice_machine("pc-real"), full, trials=4, depth=4)
    with pytest.raises(ValueError):
        monte_carlo_success(get_advice_machine("pc-cantor"), full, trials=0, depth=4)


def test_closed_measure_bounds():
    s = parse_set_literal("closed{complement: 1; 0,0}")
    assert closed_measure_bounds(s, 8) == (Fraction(0), Fraction(1, 4))
    with pytest.raises(SchemeMismatch):
        closed_measure_bounds(closed_nat_only([1]), 8)


@pytest.mark.slow
@pytest.mark.parametrize("seed", [1, 2, 3])
@pytest.mark.parametrize(
    "literal, measure",
    [
        ("closed{complement: 1}", 0.5),
        ("closed{complement: 1; 0,1}", 0.25),
        ("closed{complement: 1; 0,1; 0,0,1}", 0.125),
    ],
)
def test_monte_carlo_lands_near_the_set_measure(literal, measure, seed):
    result = monte_carlo_success(get_advice_machine("pc-cantor"), parse_set_literal(literal).name, 100_000, 8, seed=seed, jobs=4)
    low, high = result.wilson99
    assert low <= measure <= high


@pytest.mark.slow
def test_geometric_advice_hits_a_single_natural():
    result = monte_carlo_success(get_advice_machine("c-nat-geometric"), closed_nat_only([3]).name, 100_000, 24, seed=5, jobs=4)
    sigma = math.sqrt(result.trials * (1 / 16) * (15 / 16))
    assert abs(result.successes - result.trials / 16) <= 3 * sigma
