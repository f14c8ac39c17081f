from __future__ import annotations

import pytest

from advice_kit.errors import MalformedName
from advice_kit.names import (
    BINARY,
    NATURAL,
    Alphabet,
    AlphabetKind,
    Interleaved,
    Prefix,
    computed_name,
    constant_name,
    drop_name,
    eventually_periodic,
    pair_names,
    parse_name_literal,
    prepend_name,
    tuple_names,
    unpair_name,
    untuple_name,
    zero_name,
)


def test_pair_zero_and_one_interleaves():
    paired = pair_names(zero_name(), constant_name(1, BINARY))
    assert paired.take(6).symbols == (0, 1, 0, 1, 0, 1)


def test_pair_with_itself_is_the_same_sequence():
    assert pair_names(zero_name(), zero_name()).take(8).symbols == (0,) * 8


def test_unpair_inverts_pair(random_periodic):
    for _ in range(50):
        p, q = random_periodic(), random_periodic()
        left, right = unpair_name(pair_names(p, q))
        assert left.take(20) == p.take(20)
        assert right.take(20) == q.take(20)


def test_pair_indices(random_periodic):
    p, q = random_periodic(), random_periodic()
    paired = pair_names(p, q)
    for i in range(15):
        assert paired.symbol(2 * i) == p.symbol(i)
        assert paired.symbol(2 * i + 1) == q.symbol(i)


def test_tuple_of_three_components():
    names = [constant_name(s, NATURAL) for s in (4, 5, 6)]
    assert tuple_names(names).take(6).symbols == (4, 5, 6, 4, 5, 6)
    assert [n.take(2).symbols for n in untuple_name(tuple_names(names), 3)] == [(4, 4), (5, 5), (6, 6)]


def test_interleaving_of_computed_names_keeps_components():
    ones = computed_name(BINARY, "ones", lambda: iter(lambda: 1, None))
    paired = pair_names(zero_name(), ones)
    assert isinstance(paired.source, Interleaved)
    left, right = unpair_name(paired)
    assert right.take(3).symbols == (1, 1, 1)
    assert left.take(3).symbols == (0, 0, 0)


def test_pairing_joins_alphabets():
    joined = pair_names(zero_name(), constant_name(2, Alphabet.finite(3)))
    assert joined.alphabet == Alphabet.finite(3)
    assert pair_names(zero_name(), constant_name(9)).alphabet == NATURAL


@pytest.mark.parametrize("size", [0, -1])
def test_finite_alphabet_needs_a_symbol(size):
    with pytest.raises(MalformedName):
        Alphabet(AlphabetKind.FINITE, size)


def test_symbols_are_checked_against_alphabet():
    with pytest.raises(MalformedName):
        eventually_periodic(BINARY, [2], [0])


def test_normalization_gives_equal_descriptions():
    a = eventually_periodic(BINARY, [1, 1, 0, 1], [0, 1, 0, 1])
    b = eventually_periodic(BINARY, [1], [1, 0])
    assert a == b


def test_prefix_order():
    short, long = Prefix(BINARY, (0, 1)), Prefix(BINARY, (0, 1, 1))
    assert short.is_prefix_of(long)
    assert long.extends(short)
    assert not long.is_prefix_of(short)


def test_drop_and_prepend_are_inverse():
    name = eventually_periodic(BINARY, [1, 0], [1, 1, 0])
    assert prepend_name((1, 0), drop_name(name, 2)).take(12) == name.take(12)


@pytest.mark.parametrize(
    "literal, expected",
    [
        ("alphabet:bin;prefix:0,1,1;period:0", (0, 1, 1, 0, 0)),
        ("alphabet:nat;period:3,4", (3, 4, 3, 4, 3)),
        ("alphabet:finite3;prefix:2;period:1", (2, 1, 1, 1, 1)),
    ],
)
def test_name_literals(literal, expected):
    assert parse_name_literal(literal).take(5).symbols == expected


@pytest.mark.parametrize("literal", ["alphabet:bin;prefix:0", "alphabet:bin;period:", "color:red;period:1"])
def test_bad_name_literals(literal):
    with pytest.raises(MalformedName):
        parse_name_literal(literal)
