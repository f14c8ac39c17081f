from __future__ import annotations

from fractions import Fraction

import pytest

from advice_kit.errors import FixtureParseError, MalformedName
from advice_kit.intervals import Interval, sqrt_enclosure, unzigzag, zigzag
from advice_kit.machines.machine import Diverged, run_machine
from advice_kit.names import BINARY, eventually_periodic
from advice_kit.spaces.dense import cantor_sequence, dense_witness, dyadic_unit_sequence, naturals_sequence
from advice_kit.spaces.descriptors import CANTOR, NAT, REAL, UNIT_INTERVAL, SpaceKind, parse_space, power, product
from advice_kit.spaces.literals import parse_rational, parse_set_literal
from advice_kit.spaces.reals import (
    decode_real_prefix,
    encode_rational,
    exact_value,
    header_symbols,
    negate_machine,
    real_enclosure,
    shift_exponent_machine,
    translate_name,
)
from advice_kit.spaces.sets import (
    ClosedSetName,
    Membership,
    OpenSetName,
    cantor_remaining_mass,
    closed_consistent_at_depth,
    closed_set,
    cylinder_singleton,
    decode_interval_word,
    encode_entries,
    interval_word,
    open_choice,
    open_set_from_words,
    parse_entries,
    remaining_intervals,
)

RATIONALS = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 3), Fraction(-5, 7), Fraction(22, 7), Fraction(1, 1024), 17]


@pytest.mark.parametrize("value", RATIONALS)
def test_encode_rational_round_trips(value):
    assert exact_value(encode_rational(value)) == Fraction(value)


@pytest.mark.parametrize("value", RATIONALS)
def test_prefix_enclosures_shrink_around_value(value):
    name = encode_rational(value)
    previous = None
    for length in range(10, 60, 7):
        enclosure = decode_real_prefix(name.take(length))
        assert enclosure.contains(Fraction(value))
        if previous is not None:
            assert enclosure.subset_of(previous)
        previous = enclosure


def test_real_enclosure_reaches_requested_digits():
    enclosure = real_enclosure(encode_rational(Fraction(1, 3)), 30)
    assert enclosure.width() == Fraction(1, 2**29)


def test_header_of_zero():
    assert header_symbols(0) == (0, 0)


def test_bad_digit_symbol_is_malformed():
    with pytest.raises(MalformedName):
        decode_real_prefix((0, 0, 5))


def test_negate_and_shift_machines():
    x = encode_rational(Fraction(3, 8))
    negated = run_machine(negate_machine(), x, 30)
    assert decode_real_prefix(negated).contains(Fraction(-3, 8))
    doubled = run_machine(shift_exponent_machine(1), x, 30)
    assert decode_real_prefix(doubled).contains(Fraction(3, 4))


@pytest.mark.parametrize(
    "prefix, period, value",
    [([0], [1], Fraction(1, 2)), ([0], [1, 0], Fraction(1, 3)), ([], [1], Fraction(1))],
)
def test_binary_names_translate_to_signed_digits(prefix, period, value):
    name = translate_name(eventually_periodic(BINARY, prefix, period))
    assert real_enclosure(name, 24).contains(value)


@pytest.mark.parametrize("value", [0, 1, -1, 7, -8, 1000])
def test_zigzag_round_trip(value):
    assert unzigzag(zigzag(value)) == value


def test_interval_arithmetic():
    a, b = Interval.of(1, 2), Interval.of(-1, 3)
    assert a + b == Interval.of(0, 5)
    assert a - b == Interval.of(-2, 3)
    assert (a * b).contains(Fraction(-2))
    assert Interval.of(-1, 2).square() == Interval.of(0, 4)
    assert sqrt_enclosure(2, 20).square().contains(2)


def test_entry_coding_round_trip():
    entries = [(1,), None, (0, 1), (), None]
    assert list(parse_entries(iter(encode_entries(entries)))) == entries


def test_interval_word_decodes():
    centre, radius = decode_interval_word(interval_word(Fraction(-1, 2), -2))
    assert (centre, radius) == (Fraction(-1, 2), Fraction(1, 4))


@pytest.mark.parametrize(
    "literal, kind, excluded",
    [
        ("closed{complement: 1}", ClosedSetName, [(1,)]),
        ("closed{complement: 0,1; 1,1}", ClosedSetName, [(0, 1), (1, 1)]),
        ("closed{}", ClosedSetName, []),
        ("open{words: 1; 0,1}", OpenSetName, [(1,), (0, 1)]),
    ],
)
def test_set_literals(literal, kind, excluded):
    s = parse_set_literal(literal)
    assert isinstance(s, kind)
    words = s.excluded(8) if isinstance(s, ClosedSetName) else s.words(8)
    assert words == excluded


def test_interval_literal_and_remaining_pieces():
    s = parse_set_literal("closed{space: interval; complement: 1/2@-2}")
    assert isinstance(s, ClosedSetName)
    assert s.space.kind is SpaceKind.UNIT_INTERVAL
    pieces = remaining_intervals(s, 4, Interval.of(0, 1))
    assert pieces == [Interval.of(0, Fraction(1, 4)), Interval.of(Fraction(3, 4), 1)]


def test_nat_only_literal():
    s = parse_set_literal("closed{space: nat; only: 3,5}")
    assert isinstance(s, ClosedSetName)
    assert s.excluded(5) == [(0,), (1,), (2,), (4,), (6,)]


@pytest.mark.parametrize("literal", ["closed(complement: 1)", "half{words: 1}", "open{colour: 1}", "closed{space: real; complement: 1}"])
def test_bad_set_literals(literal):
    with pytest.raises(FixtureParseError):
        parse_set_literal(literal)


def test_parse_rational():
    assert parse_rational("22/7") == Fraction(22, 7)
    with pytest.raises(FixtureParseError):
        parse_rational("1/0")


def test_cantor_geometry():
    excluded = [(1,), (0, 0)]
    assert cantor_remaining_mass((), excluded) == Fraction(1, 4)
    s = closed_set(CANTOR, excluded)
    assert closed_consistent_at_depth(s, (0, 1), 8) is Membership.CONSISTENT
    assert closed_consistent_at_depth(s, (0, 0, 1), 8) is Membership.EXCLUDED


def test_cylinder_singleton_excludes_siblings():
    s = cylinder_singleton((1, 0, 1), 3)
    assert s.excluded(8) == [(0,), (1, 1), (1, 0, 0)]


def test_open_choice_on_cantor_and_nat():
    cantor = open_set_from_words(CANTOR, [(1,), (0, 1)])
    point = open_choice(cantor).take(6).symbols
    assert point[:1] == (1,)
    nat = open_set_from_words(NAT, [(4,)])
    assert open_choice(nat).take(3).symbols == (4, 4, 4)


def test_open_choice_on_interval_returns_centre():
    ball = open_set_from_words(UNIT_INTERVAL, [interval_word(Fraction(1, 3), -4)])
    assert decode_real_prefix(open_choice(ball).take(40)).contains(Fraction(1, 3))


def test_dense_sequences():
    assert [str(q) for q in dyadic_unit_sequence().take(6)] == ["0", "1", "1/2", "1/4", "3/4", "1/8"]
    assert cantor_sequence().take(4) == [(), (0,), (1,), (0, 0)]
    assert naturals_sequence().take(3) == [0, 1, 2]


def test_dense_witness_finds_least_index_or_diverges():
    ball = open_set_from_words(UNIT_INTERVAL, [interval_word(Fraction(1, 2), -2)])
    assert dense_witness(ball, dyadic_unit_sequence()) == 2
    empty = open_set_from_words(CANTOR, [])
    assert isinstance(dense_witness(empty, cantor_sequence(), max_stages=16), Diverged)
    cylinder = open_set_from_words(CANTOR, [(1, 1)])
    found = dense_witness(cylinder, cantor_sequence())
    assert found == 6
    assert cantor_sequence().point(found)[:2] == (1, 1)


def test_space_descriptors():
    assert parse_space("finite3").kind is SpaceKind.FINITE
    assert product(CANTOR, NAT).injective
    assert not REAL.injective
    assert power(REAL, 3).alphabet.size == 3
    with pytest.raises(MalformedName):
        parse_space("hilbert")
