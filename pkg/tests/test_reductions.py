from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from advice_kit.advice.catalog import get_advice_machine
from advice_kit.advice.combinators import transport_advice_along_reduction
from advice_kit.advice.machine import sound_on
from advice_kit.errors import AdviceKitError, UnknownCatalogEntry
from advice_kit.names import BINARY, computed_name, eventually_periodic, pair_names, tuple_names, zero_name
from advice_kit.problems import Verdict
from advice_kit.problems.catalog import get_problem
from advice_kit.reductions.catalog import (
    MAX_ROUNDS,
    cnat_to_pcr_witness,
    get_witness,
    llpo_to_seigen2_witness,
    mlpo_to_lineq_witness,
    pc_cantor_interval_witnesses,
    seigen_tensor_witness,
    witness_ids,
)
from advice_kit.reductions.witness import (
    apply_reduction,
    compose_reductions,
    identity_witness,
    product_reductions,
    solver_for,
    trace_reduction,
)
from advice_kit.spaces.descriptors import CANTOR, UNIT_INTERVAL
from advice_kit.spaces.literals import parse_set_literal
from advice_kit.spaces.reals import encode_rational
from advice_kit.spaces.sets import cantor_remaining_mass, closed_nat_only, closed_set, interval_word

PRECISION = 24
DEPTH = 48
FIXTURES = 100


def one_at(index: int):
    return eventually_periodic(BINARY, [0] * index + [1], [0])


def reals(*values):
    return tuple_names([encode_rational(Fraction(v)) for v in values])


LLPO_CASES = [
    pytest.param(pair_names(zero_name(), one_at(0)), id="left-zero"),
    pytest.param(pair_names(one_at(2), zero_name()), id="right-zero"),
    pytest.param(pair_names(zero_name(), zero_name()), id="both-zero"),
]


@pytest.mark.parametrize("x", LLPO_CASES)
@pytest.mark.parametrize("variant", get_problem("SEIGEN_2").oracle_variants())
def test_llpo_through_eigenvectors(x, variant):
    witness = llpo_to_seigen2_witness()
    trace = trace_reduction(witness, solver_for("SEIGEN_2", variant, PRECISION), x, 4)
    assert get_problem("LLPO").verify(x, trace.output, 16) is Verdict.CONSISTENT
    assert trace.annotations["rounds"] <= MAX_ROUNDS


def test_llpo_answers_the_zero_side():
    witness = llpo_to_seigen2_witness()
    solve = solver_for("SEIGEN_2", "least", PRECISION)
    assert apply_reduction(witness, solve, pair_names(zero_name(), one_at(0)), 3).symbols == (0, 0, 0)
    assert apply_reduction(witness, solve, pair_names(one_at(1), zero_name()), 3).symbols == (1, 1, 1)


def test_llpo_gap_beyond_the_eigen_precision_reads_as_scalar():
    witness = llpo_to_seigen2_witness()
    x = pair_names(zero_name(), one_at(40))
    coarse = apply_reduction(witness, solver_for("SEIGEN_2", "least", 4), x, 2)
    assert coarse.symbols == (1, 1)
    fine = apply_reduction(witness, solver_for("SEIGEN_2", "least", 16), x, 2)
    assert fine.symbols == (0, 0)
    assert get_problem("LLPO").verify(x, fine, 48) is Verdict.CONSISTENT


def _counting(solve, reached):
    def counted(y):
        inner = solve(y)

        def stream():
            for index, symbol in enumerate(inner.stream()):
                reached.append(index + 1)
                yield symbol

        return computed_name(inner.alphabet, "counted", stream)

    return counted


@pytest.mark.parametrize("x", [pair_names(one_at(3), zero_name()), pair_names(zero_name(), one_at(1))])
def test_llpo_answer_is_paced_by_the_source_after_committing(x):
    witness = llpo_to_seigen2_witness()
    solve = solver_for("SEIGEN_2", "greatest", PRECISION)
    short, long = [], []
    first = apply_reduction(witness, _counting(solve, short), x, 1)
    rest = apply_reduction(witness, _counting(solve, long), x, 48)
    assert rest.symbols == first.symbols * 48
    assert max(long) - max(short) <= 48


@pytest.mark.parametrize(
    "values, expected",
    [
        ((0, Fraction(1, 2), Fraction(1, 4)), 1),
        ((Fraction(1, 2), 0, Fraction(1, 4)), 2),
        ((Fraction(1, 2), Fraction(1, 4), 0), 3),
    ],
)
@pytest.mark.parametrize("variant", ["canonical", "negated", "halved"])
def test_mlpo_through_linear_equations(values, expected, variant):
    x = reals(*values)
    out = apply_reduction(mlpo_to_lineq_witness(2), solver_for("LINEQ_2_3", variant, PRECISION), x, 3)
    assert out.symbols == (expected,) * 3
    assert get_problem("MLPO_3").verify(x, out, 24) is Verdict.CONSISTENT


def _mlpo_fixture(rng, n):
    values = [Fraction(int(rng.integers(1, 9)) * int(rng.choice([-1, 1])), 8) for _ in range(n + 1)]
    values[int(rng.integers(0, n + 1))] = Fraction(0)
    return reals(*values)


@pytest.mark.parametrize("variant", ["canonical", "negated", "halved"])
def test_mlpo_on_random_fixtures(variant, rng):
    witness = mlpo_to_lineq_witness(2)
    solve = solver_for("LINEQ_2_3", variant, PRECISION)
    for _ in range(10):
        x = _mlpo_fixture(rng, 2)
        out = apply_reduction(witness, solve, x, 2)
        assert get_problem("MLPO_3").verify(x, out, 24) is Verdict.CONSISTENT


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_mlpo_on_many_fixtures(n, rng):
    witness = mlpo_to_lineq_witness(n)
    problem = get_problem(f"MLPO_{n + 1}")
    for variant in ("canonical", "negated", "halved"):
        solve = solver_for(f"LINEQ_{n}_{n + 1}", variant, PRECISION)
        for _ in range(FIXTURES):
            x = _mlpo_fixture(rng, n)
            out = apply_reduction(witness, solve, x, DEPTH)
            assert out.symbols == out.symbols[:1] * DEPTH
            assert problem.verify(x, out, DEPTH) is Verdict.CONSISTENT


@pytest.mark.parametrize("n", range(10))
@pytest.mark.parametrize("side", ["left", "right"])
def test_nat_choice_through_positive_real_choice(n, side):
    x = closed_nat_only([n]).name
    out = apply_reduction(cnat_to_pcr_witness(), solver_for("PC_REAL", side), x, 2)
    assert out.symbols == (n, n)


def test_transported_advice_solves_nat_choice():
    moved = transport_advice_along_reduction(cnat_to_pcr_witness(), get_advice_machine("pc-real"))
    assert moved.problem_id == "C_NAT"
    for n in range(10):
        results = sound_on(moved, closed_nat_only([n]).name, 8)
        assert results and all(verdict is Verdict.CONSISTENT for _, verdict in results)


@pytest.mark.parametrize(
    "a, b",
    [
        ((1, 0, 0, 2), (3, 0, 0, 5)),
        ((2, 1, 1, 2), (1, 0, 0, 2)),
    ],
)
@pytest.mark.parametrize("variant", ["least", "greatest-neg"])
def test_tensor_factors_are_eigenvectors(a, b, variant):
    witness = seigen_tensor_witness(2, 2)
    x = pair_names(reals(*a), reals(*b))
    out = apply_reduction(witness, solver_for("SEIGEN_4", variant), x, 4 * 24)
    assert get_problem(witness.source).verify(x, out, 16) is Verdict.CONSISTENT


@pytest.mark.slow
def test_llpo_squared_through_four_by_four():
    witness = get_witness("llpo-power:2")
    x = pair_names(pair_names(zero_name(), one_at(1)), pair_names(one_at(0), zero_name()))
    out = apply_reduction(witness, solver_for("SEIGEN_4", "least"), x, 8)
    assert get_problem("LLPOxLLPO").verify(x, out, 16) is Verdict.CONSISTENT


@pytest.mark.parametrize("variant", ["leftmost", "heaviest", "heaviest-right"])
def test_positive_interval_choice_through_cantor(variant):
    _, to_cantor = pc_cantor_interval_witnesses()
    x = parse_set_literal("closed{space: interval; complement: 1/2@-2}").name
    out = apply_reduction(to_cantor, solver_for("PC_CANTOR", variant), x, 40)
    assert get_problem("PC_INTERVAL").verify(x, out, 16) is Verdict.CONSISTENT


@pytest.mark.parametrize("side", ["left", "right"])
def test_positive_cantor_choice_through_interval(side):
    to_interval, _ = pc_cantor_interval_witnesses()
    x = closed_set(CANTOR, [(1,)]).name
    out = apply_reduction(to_interval, solver_for("PC_INTERVAL", side), x, 12)
    assert out.symbols[0] == 0
    assert get_problem("PC_CANTOR").verify(x, out, 12) is Verdict.CONSISTENT


def test_identity_witness_passes_answers_through():
    x = pair_names(one_at(3), zero_name())
    solve = solver_for("LLPO", "greatest")
    assert apply_reduction(identity_witness("LLPO"), solve, x, 6).symbols == solve(x).take(6).symbols


def test_composing_with_identities():
    witness = compose_reductions(identity_witness("MLPO_3"), mlpo_to_lineq_witness(2))
    assert (witness.source, witness.target) == ("MLPO_3", "LINEQ_2_3")
    x = reals(Fraction(1, 2), 0, Fraction(1, 4))
    assert apply_reduction(witness, solver_for("LINEQ_2_3", "canonical", PRECISION), x, 2).symbols == (2, 2)


def test_composition_needs_matching_problems():
    with pytest.raises(AdviceKitError):
        compose_reductions(llpo_to_seigen2_witness(), mlpo_to_lineq_witness(2))


def test_product_of_witnesses():
    both = product_reductions(identity_witness("LPO"), identity_witness("LLPO"))
    assert (both.source, both.target) == ("LPOxLLPO", "LPOxLLPO")
    x = pair_names(one_at(0), pair_names(zero_name(), one_at(2)))
    out = apply_reduction(both, solver_for("LPOxLLPO", "exact|least"), x, 8)
    assert get_problem("LPOxLLPO").verify(x, out, 16) is Verdict.CONSISTENT


def test_witness_catalog():
    assert "llpo-seigen2" in witness_ids()
    assert get_witness("mlpo-lineq:3").target == "LINEQ_3_4"
    assert get_witness("seigen-tensor:2:4").source == "SEIGEN_2xSEIGEN_4"
    for witness_id in ("teleport", "mlpo-lineq:0", "seigen-tensor:3:3", "llpo-power:4", "mlpo-lineq:x"):
        with pytest.raises(UnknownCatalogEntry):
            get_witness(witness_id)


def _llpo_fixture(rng):
    index = int(rng.integers(0, 12))
    match int(rng.integers(0, 3)):
        case 0:
            return pair_names(zero_name(), one_at(index))
        case 1:
            return pair_names(one_at(index), zero_name())
    return pair_names(zero_name(), zero_name())


@pytest.mark.slow
@pytest.mark.parametrize("variant", ["least", "greatest-neg", "adversarial-3"])
def test_llpo_on_many_fixtures(variant, rng):
    witness = llpo_to_seigen2_witness()
    solve = solver_for("SEIGEN_2", variant, PRECISION)
    for _ in range(FIXTURES):
        x = _llpo_fixture(rng)
        out = apply_reduction(witness, solve, x, DEPTH)
        assert out.symbols == out.symbols[:1] * DEPTH
        assert get_problem("LLPO").verify(x, out, DEPTH) is Verdict.CONSISTENT


def _symmetric_fixture(rng):
    a, b, c = (int(v) for v in rng.integers(-3, 4, size=3))
    return (a, b, b, c)


def _tensor_fixture(rng):
    """Pair of symmetric 2x2 matrices whose Kronecker product has simple extreme eigenvalues."""

    while True:
        first, second = _symmetric_fixture(rng), _symmetric_fixture(rng)
        products = np.sort(
            np.outer(
                np.linalg.eigvalsh(np.array(first, dtype=float).reshape(2, 2)),
                np.linalg.eigvalsh(np.array(second, dtype=float).reshape(2, 2)),
            ).ravel()
        )
        if products[1] - products[0] > 0.25 and products[3] - products[2] > 0.25:
            return pair_names(reals(*first), reals(*second))


@pytest.mark.slow
@pytest.mark.parametrize("variant", ["least", "greatest-neg"])
def test_tensor_on_many_fixtures(variant, rng):
    witness = seigen_tensor_witness(2, 2)
    solve = solver_for("SEIGEN_4", variant)
    problem = get_problem(witness.source)
    for _ in range(FIXTURES):
        x = _tensor_fixture(rng)
        assert problem.verify(x, apply_reduction(witness, solve, x, DEPTH), 16) is Verdict.CONSISTENT


@pytest.mark.slow
@pytest.mark.parametrize("side", ["left", "right"])
def test_nat_choice_on_many_fixtures(side, rng):
    witness = cnat_to_pcr_witness()
    solve = solver_for("PC_REAL", side)
    for _ in range(FIXTURES):
        kept = {int(v) for v in rng.integers(0, 12, size=int(rng.integers(1, 5)))}
        x = closed_nat_only(kept).name
        out = apply_reduction(witness, solve, x, DEPTH)
        assert out.symbols[0] in kept
        assert out.symbols == out.symbols[:1] * DEPTH
        assert get_problem("C_NAT").verify(x, out, DEPTH) is Verdict.CONSISTENT


def _cantor_fixture(rng):
    while True:
        excluded = [
            tuple(int(b) for b in rng.integers(0, 2, size=int(rng.integers(1, 5))))
            for _ in range(int(rng.integers(0, 4)))
        ]
        if cantor_remaining_mass((), excluded) > 0:
            return closed_set(CANTOR, excluded).name


def _interval_fixture(rng):
    centres = {int(k) for k in rng.integers(1, 8, size=int(rng.integers(0, 3)))}
    return closed_set(UNIT_INTERVAL, [interval_word(Fraction(k, 8), -3) for k in sorted(centres)]).name


@pytest.mark.slow
@pytest.mark.parametrize("side", ["left", "right"])
def test_cantor_choice_through_interval_on_many_fixtures(side, rng):
    to_interval, _ = pc_cantor_interval_witnesses()
    solve = solver_for("PC_INTERVAL", side)
    for _ in range(FIXTURES):
        x = _cantor_fixture(rng)
        out = apply_reduction(to_interval, solve, x, DEPTH)
        assert get_problem("PC_CANTOR").verify(x, out, DEPTH) is Verdict.CONSISTENT


@pytest.mark.slow
@pytest.mark.parametrize("variant", ["leftmost", "heaviest"])
def test_interval_choice_through_cantor_on_many_fixtures(variant, rng):
    _, to_cantor = pc_cantor_interval_witnesses()
    solve = solver_for("PC_CANTOR", variant)
    for _ in range(FIXTURES):
        x = _interval_fixture(rng)
        out = apply_reduction(to_cantor, solve, x, DEPTH)
        assert get_problem("PC_INTERVAL").verify(x, out, DEPTH) is Verdict.CONSISTENT
