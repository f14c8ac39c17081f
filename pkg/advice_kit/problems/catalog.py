"""
The problem catalog.

``get_problem`` resolves an id to a ``MultiProblem``. Base ids are ``LPO``,
``LLPO``, ``MLPO_n``, ``SEP``, the choice problems ``C_NAT``, ``UC_NAT``,
``C_CANTOR``, ``UC_CANTOR``, ``PC_CANTOR``, ``PC_INTERVAL``, ``PC_REAL``, the
linear-algebra problems ``SEIGEN_n`` and ``LINEQ_n_m``, ``CIRCLE`` and the
identities ``ID_NAT``, ``ID_CANTOR``, ``ID_REAL``. Ids combine as ``A^n``
(power), ``AxB`` (product), ``A+B`` (coproduct) and ``A∘B`` (composition with
an identity problem); ``+`` binds loosest, then ``x``, then ``∘``, then ``^``.
"""

from __future__ import annotations

import logging
import re
from dataclasses import replace
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence

from ..errors import DomainViolated, UnknownCatalogEntry
from ..intervals import Interval, interval_sum
from ..names import Name, Prefix, drop_name, prepend_name, tuple_names, untuple_name
from ..spaces.descriptors import (
    CANTOR,
    NAT,
    REAL,
    UNIT_INTERVAL,
    SpaceDescriptor,
    SpaceKind,
    closed_space,
    coproduct,
    power,
    product,
)
from ..spaces.reals import read_real_tuple, real_enclosure
from ..spaces.sets import UNIT, Membership, cantor_covered, closed_consistent_at_depth, remaining_intervals
from .base import (
    DomainStatus,
    MultiProblem,
    Oracle,
    Verdict,
    all_consistent,
    always_in_domain,
    any_violated,
    candidate_interval,
    component_intervals,
    constant_answer,
    known_real,
    split_prefix,
    zero_status,
)
from .oracles import (
    ADVERSARIAL_ANGLES,
    adversarial_parameter,
    cantor_choice_oracle,
    circle_oracle,
    closed_of,
    identity_oracle,
    interval_choice_oracle,
    lineq_oracle,
    llpo_oracle,
    lpo_oracle,
    mlpo_oracle,
    nat_choice_oracle,
    read_matrix,
    seigen2_oracle,
    seigen_oracle,
    sep_oracle,
)

logger = logging.getLogger(__name__)

MAX_EIGEN_DIMENSION = 8
COMPOSE = "∘"

_MLPO = re.compile(r"MLPO_(\d+)")
_SEIGEN = re.compile(r"SEIGEN_(\d+)")
_LINEQ = re.compile(r"LINEQ_(\d+)_(\d+)")
_POWER = re.compile(r"(.+)\^(\d+)")
_CHOICE_SUFFIX = {
    SpaceKind.NAT: "NAT",
    SpaceKind.CANTOR: "CANTOR",
    SpaceKind.UNIT_INTERVAL: "INTERVAL",
    SpaceKind.REAL_SIGNED: "REAL",
}
_CHOICE_KIND = {"C": "closed", "UC": "unique", "PC": "positive"}

BASE_IDS = (
    "LPO",
    "LLPO",
    "MLPO_n",
    "SEP",
    "C_NAT",
    "UC_NAT",
    "C_CANTOR",
    "UC_CANTOR",
    "PC_CANTOR",
    "PC_INTERVAL",
    "PC_REAL",
    "SEIGEN_n",
    "LINEQ_n_m",
    "CIRCLE",
    "ID_NAT",
    "ID_CANTOR",
    "ID_REAL",
)


# Omniscience principles.


def _verify_lpo(x: Name, candidate: Prefix, depth: int) -> Verdict:
    answer = constant_answer(candidate)
    if answer is None:
        return Verdict.CONSISTENT
    if answer not in (0, 1):
        return Verdict.REFUTED
    zero = zero_status(x, depth)
    if zero is None or zero == (answer == 0):
        return Verdict.CONSISTENT
    return Verdict.REFUTED


def _verify_llpo(x: Name, candidate: Prefix, depth: int) -> Verdict:
    answer = constant_answer(candidate)
    if answer is None:
        return Verdict.CONSISTENT
    if answer not in (0, 1):
        return Verdict.REFUTED
    chosen = untuple_name(x, 2)[answer]
    return Verdict.REFUTED if zero_status(chosen, depth) is False else Verdict.CONSISTENT


def _llpo_domain(x: Name, depth: int) -> DomainStatus:
    if all(zero_status(part, depth) is False for part in untuple_name(x, 2)):
        return DomainStatus.VIOLATED
    return DomainStatus.CONSISTENT_SO_FAR


def _provably_nonzero(part: Name, enclosure: Interval, depth: int) -> bool:
    if enclosure.excludes_zero():
        return True
    value = known_real(part, depth)
    return value is not None and value != 0


def _mlpo_verifier(count: int):
    def verify(x: Name, candidate: Prefix, depth: int) -> Verdict:
        answer = constant_answer(candidate)
        if answer is None:
            return Verdict.CONSISTENT
        if not 1 <= answer <= count:
            return Verdict.REFUTED
        part = untuple_name(x, count)[answer - 1]
        nonzero = _provably_nonzero(part, real_enclosure(part, depth), depth)
        return Verdict.REFUTED if nonzero else Verdict.CONSISTENT

    return verify


def _mlpo_domain(count: int):
    def check(x: Name, depth: int) -> DomainStatus:
        parts = untuple_name(x, count)
        enclosures = read_real_tuple(x, count, depth)
        if all(_provably_nonzero(p, e, depth) for p, e in zip(parts, enclosures)):
            return DomainStatus.VIOLATED
        return DomainStatus.CONSISTENT_SO_FAR

    return check


def _verify_sep(x: Name, candidate: Prefix, depth: int) -> Verdict:
    left, right = untuple_name(x, 2)
    seen = min(depth, len(candidate))
    for a, b, z in zip(left.take(seen), right.take(seen), candidate.symbols):
        if (a == 1 and z != 1) or (b == 1 and z != 0):
            return Verdict.REFUTED
    return Verdict.CONSISTENT


def _sep_domain(x: Name, depth: int) -> DomainStatus:
    left, right = untuple_name(x, 2)
    if any(a == 1 and b == 1 for a, b in zip(left.take(depth), right.take(depth))):
        return DomainStatus.VIOLATED
    return DomainStatus.CONSISTENT_SO_FAR


def lpo_problem() -> MultiProblem:
    return MultiProblem(
        "LPO",
        CANTOR,
        NAT,
        _verify_lpo,
        oracles={"exact": lpo_oracle},
        description="0 when the sequence is 0^ω, otherwise 1",
    )


def llpo_problem() -> MultiProblem:
    return MultiProblem(
        "LLPO",
        power(CANTOR, 2),
        NAT,
        _verify_llpo,
        _llpo_domain,
        {"least": llpo_oracle(False), "greatest": llpo_oracle(True)},
        "index of a zero sequence among two, at most one of them nonzero",
    )


def mlpo_problem(count: int) -> MultiProblem:
    if count < 1:
        raise UnknownCatalogEntry("MLPO_n needs n >= 1")
    return MultiProblem(
        f"MLPO_{count}",
        power(REAL, count),
        NAT,
        _mlpo_verifier(count),
        _mlpo_domain(count),
        {"least": mlpo_oracle(count, False), "greatest": mlpo_oracle(count, True)},
        f"1-based index of a zero among {count} reals",
    )


def sep_problem() -> MultiProblem:
    return MultiProblem(
        "SEP",
        power(CANTOR, 2),
        CANTOR,
        _verify_sep,
        _sep_domain,
        {"lower": sep_oracle(False), "upper": sep_oracle(True)},
        "a set containing the first enumeration and disjoint from the second",
    )


# Choice problems.


def _choice_verifier(base: SpaceDescriptor):
    def verify(x: Name, candidate: Prefix, depth: int) -> Verdict:
        closed = closed_of(base, x)
        if base.kind is SpaceKind.NAT:
            answer = constant_answer(candidate)
            if answer is None:
                return Verdict.CONSISTENT
            word = (answer,)
        elif base.kind in (SpaceKind.UNIT_INTERVAL, SpaceKind.REAL_SIGNED):
            enclosure = candidate_interval(candidate)
            if enclosure is None:
                return Verdict.CONSISTENT
            membership = closed_consistent_at_depth(closed, enclosure, depth)
            return Verdict.REFUTED if membership is Membership.EXCLUDED else Verdict.CONSISTENT
        else:
            word = candidate.symbols
        membership = closed_consistent_at_depth(closed, word, depth)
        return Verdict.REFUTED if membership is Membership.EXCLUDED else Verdict.CONSISTENT

    return verify


def _cantor_nonempty(x: Name, depth: int) -> DomainStatus:
    if cantor_covered((), closed_of(CANTOR, x).excluded(depth)):
        return DomainStatus.VIOLATED
    return DomainStatus.CONSISTENT_SO_FAR


def _interval_positive(x: Name, depth: int) -> DomainStatus:
    pieces = remaining_intervals(closed_of(UNIT_INTERVAL, x), depth, UNIT)
    if sum((piece.width() for piece in pieces), Fraction(0)) == 0:
        return DomainStatus.VIOLATED
    return DomainStatus.CONSISTENT_SO_FAR


def choice_problem(kind: str, base: SpaceDescriptor) -> MultiProblem:
    """``C_X``, ``UC_X`` or ``PC_X`` over ``base``.

    The three share verifier and oracles; they differ in the domain promise
    (non-empty, singleton, positive measure), which only the Cantor and unit
    interval versions can refute at finite depth.
    """

    problem_id = f"{kind}_{_CHOICE_SUFFIX[base.kind]}"
    oracles: Dict[str, Oracle]
    match base.kind:
        case SpaceKind.NAT:
            oracles = {"least": nat_choice_oracle(base)}
        case SpaceKind.CANTOR:
            oracles = {
                "leftmost": cantor_choice_oracle(base, "leftmost"),
                "heaviest": cantor_choice_oracle(base, "heaviest"),
                "heaviest-right": cantor_choice_oracle(base, "heaviest-right"),
            }
        case _:
            oracles = {"left": interval_choice_oracle(base, "left"), "right": interval_choice_oracle(base, "right")}
    if base.kind is SpaceKind.CANTOR:
        domain = _cantor_nonempty
    elif base.kind is SpaceKind.UNIT_INTERVAL:
        domain = _interval_positive
    else:
        domain = always_in_domain
    return MultiProblem(
        problem_id,
        closed_space(base),
        base,
        _choice_verifier(base),
        domain,
        oracles,
        f"{_CHOICE_KIND[kind]} choice on {base.label()}",
    )


# Linear algebra.


def _seigen_verifier(n: int):
    def verify(x: Name, candidate: Prefix, depth: int) -> Verdict:
        vector = component_intervals(candidate, n)
        if vector is None:
            return Verdict.CONSISTENT
        norm = interval_sum(v.square() for v in vector)
        if not norm.contains(1):
            return Verdict.REFUTED
        matrix = read_matrix(x, n, n, depth)
        image = [interval_sum(a * v for a, v in zip(row, vector)) for row in matrix]
        for i in range(n):
            for j in range(i + 1, n):
                if (vector[i] * image[j] - vector[j] * image[i]).excludes_zero():
                    return Verdict.REFUTED
        return Verdict.CONSISTENT

    return verify


def _symmetric_domain(n: int):
    def check(x: Name, depth: int) -> DomainStatus:
        matrix = read_matrix(x, n, n, depth)
        for i in range(n):
            for j in range(i + 1, n):
                if matrix[i][j].intersect(matrix[j][i]) is None:
                    return DomainStatus.VIOLATED
        return DomainStatus.CONSISTENT_SO_FAR

    return check


def seigen_oracles(n: int) -> Dict[str, Oracle]:
    """Oracle variants for ``SEIGEN_n``.

    All sizes get ``least``, ``greatest`` and their negations. ``SEIGEN_2`` adds
    ``adversarial-k`` variants that alternate eigenvalue order and sign and, for
    scalar matrices, answer a different rational unit vector each.
    """

    if n == 2:
        oracles: Dict[str, Oracle] = {
            "least": seigen2_oracle(False, 1),
            "greatest": seigen2_oracle(True, 1),
            "least-neg": seigen2_oracle(False, -1),
            "greatest-neg": seigen2_oracle(True, -1),
        }
        for k in range(ADVERSARIAL_ANGLES):
            sign = -1 if k % 2 else 1
            oracles[f"adversarial-{k}"] = seigen2_oracle((k // 2) % 2 == 1, sign, adversarial_parameter(k))
        return oracles
    return {
        "least": seigen_oracle(n, False, 1),
        "greatest": seigen_oracle(n, True, 1),
        "least-neg": seigen_oracle(n, False, -1),
        "greatest-neg": seigen_oracle(n, True, -1),
    }


def seigen_problem(n: int) -> MultiProblem:
    if not 1 <= n <= MAX_EIGEN_DIMENSION:
        raise UnknownCatalogEntry(f"SEIGEN_n ships oracles for 1 <= n <= {MAX_EIGEN_DIMENSION}")
    return MultiProblem(
        f"SEIGEN_{n}",
        power(REAL, n * n),
        power(REAL, n),
        _seigen_verifier(n),
        _symmetric_domain(n),
        seigen_oracles(n),
        f"unit eigenvector of a symmetric {n}x{n} matrix (row-major entries)",
    )


def _lineq_verifier(rows: int, cols: int):
    def verify(x: Name, candidate: Prefix, depth: int) -> Verdict:
        vector = component_intervals(candidate, cols)
        if vector is None:
            return Verdict.CONSISTENT
        matrix = read_matrix(x, rows, cols, depth)
        for row in matrix:
            if interval_sum(a * v for a, v in zip(row, vector)).excludes_zero():
                return Verdict.REFUTED
        return Verdict.CONSISTENT

    return verify


def lineq_problem(rows: int, cols: int) -> MultiProblem:
    if rows < 1 or cols < 2:
        raise UnknownCatalogEntry("LINEQ_n_m needs n >= 1 and m >= 2")
    return MultiProblem(
        f"LINEQ_{rows}_{cols}",
        power(REAL, rows * cols),
        power(REAL, cols),
        _lineq_verifier(rows, cols),
        oracles={
            "canonical": lineq_oracle(rows, cols, Fraction(1)),
            "negated": lineq_oracle(rows, cols, Fraction(-1)),
            "halved": lineq_oracle(rows, cols, Fraction(1, 2)),
        },
        description=f"nonzero v with Av = 0 for an {rows}x{cols} matrix of rank at most min(n, m-1)",
    )


# The circle example and identities.


def _verify_circle(x: Name, candidate: Prefix, depth: int) -> Verdict:
    answer = candidate_interval(candidate)
    if answer is None:
        return Verdict.CONSISTENT
    value = known_real(x, depth)
    if value is not None:
        expected = value if value < 1 else value - 1
        return Verdict.CONSISTENT if answer.contains(expected) else Verdict.REFUTED
    point = real_enclosure(x, depth)
    if answer.intersect(point) is None and answer.intersect(point - 1) is None:
        return Verdict.REFUTED
    return Verdict.CONSISTENT


def circle_problem() -> MultiProblem:
    return MultiProblem(
        "CIRCLE",
        REAL,
        REAL,
        _verify_circle,
        oracles={"exact": circle_oracle},
        description="x on rationals of [0, 1), x - 1 on irrationals of [0, 1]",
    )


def _verify_same_prefix(x: Name, candidate: Prefix, depth: int) -> Verdict:
    seen = min(depth, len(candidate))
    return Verdict.CONSISTENT if x.take(seen).symbols == candidate.symbols[:seen] else Verdict.REFUTED


def _verify_same_real(x: Name, candidate: Prefix, depth: int) -> Verdict:
    answer = candidate_interval(candidate)
    if answer is None or answer.intersect(real_enclosure(x, depth)) is not None:
        return Verdict.CONSISTENT
    return Verdict.REFUTED


def identity_problem(space: SpaceDescriptor) -> MultiProblem:
    verifier = _verify_same_real if space.kind is SpaceKind.REAL_SIGNED else _verify_same_prefix
    return MultiProblem(
        f"ID_{space.label().upper()}",
        space,
        space,
        verifier,
        oracles={"exact": identity_oracle},
        description=f"identity on {space.label()}",
    )


# Combinations.


def power_problem(base: MultiProblem, count: int) -> MultiProblem:
    """``count``-fold parallel product with interleaved instances and answers."""

    def verify(x: Name, candidate: Prefix, depth: int) -> Verdict:
        parts = untuple_name(x, count)
        answers = split_prefix(candidate, count)
        return all_consistent([base.verify(p, a, depth) for p, a in zip(parts, answers)])

    def domain(x: Name, depth: int) -> DomainStatus:
        return any_violated([base.check_domain(p, depth) for p in untuple_name(x, count)])

    def power_oracle(variant: str) -> Oracle:
        def oracle(x: Name, precision: int) -> Name:
            return tuple_names([base.solve(p, precision, variant) for p in untuple_name(x, count)])

        return oracle

    return MultiProblem(
        f"{base.problem_id}^{count}",
        power(base.input_space, count),
        power(base.output_space, count),
        verify,
        domain,
        {variant: power_oracle(variant) for variant in base.oracle_variants()},
        f"{count} parallel instances of {base.problem_id}",
    )


def product_problem(left: MultiProblem, right: MultiProblem) -> MultiProblem:
    """``left x right``; oracle variants are pairs ``a|b`` of component variants."""

    def verify(x: Name, candidate: Prefix, depth: int) -> Verdict:
        xl, xr = untuple_name(x, 2)
        cl, cr = split_prefix(candidate, 2)
        return all_consistent([left.verify(xl, cl, depth), right.verify(xr, cr, depth)])

    def domain(x: Name, depth: int) -> DomainStatus:
        xl, xr = untuple_name(x, 2)
        return any_violated([left.check_domain(xl, depth), right.check_domain(xr, depth)])

    def pair_oracle(a: str, b: str) -> Oracle:
        def oracle(x: Name, precision: int) -> Name:
            xl, xr = untuple_name(x, 2)
            return tuple_names([left.solve(xl, precision, a), right.solve(xr, precision, b)])

        return oracle

    oracles = {f"{a}|{b}": pair_oracle(a, b) for a in left.oracle_variants() for b in right.oracle_variants()}
    return MultiProblem(
        f"{left.problem_id}x{right.problem_id}",
        product(left.input_space, right.input_space),
        product(left.output_space, right.output_space),
        verify,
        domain,
        oracles,
        f"{left.problem_id} and {right.problem_id} side by side",
    )


def coproduct_problem(left: MultiProblem, right: MultiProblem) -> MultiProblem:
    """``left + right``: the first symbol of instance and answer tags the side."""

    sides = (left, right)

    def verify(x: Name, candidate: Prefix, depth: int) -> Verdict:
        if not candidate.symbols:
            return Verdict.CONSISTENT
        tag = x.symbol(0)
        if tag not in (0, 1) or candidate.symbols[0] != tag:
            return Verdict.REFUTED
        rest = Prefix(candidate.alphabet, candidate.symbols[1:])
        return sides[tag].verify(drop_name(x, 1), rest, depth)

    def domain(x: Name, depth: int) -> DomainStatus:
        tag = x.symbol(0)
        if tag not in (0, 1):
            return DomainStatus.VIOLATED
        return sides[tag].check_domain(drop_name(x, 1), depth)

    def tagged_oracle(variant: str) -> Oracle:
        def oracle(x: Name, precision: int) -> Name:
            tag = x.symbol(0)
            if tag not in (0, 1):
                raise DomainViolated(f"coproduct tag {tag} is neither 0 nor 1")
            side = sides[tag]
            chosen = variant if variant in side.oracles else None
            return prepend_name([tag], side.solve(drop_name(x, 1), precision, chosen))

        return oracle

    variants: List[str] = list(dict.fromkeys(left.oracle_variants() + right.oracle_variants()))
    return MultiProblem(
        f"{left.problem_id}+{right.problem_id}",
        coproduct(left.input_space, right.input_space),
        coproduct(left.output_space, right.output_space),
        verify,
        domain,
        {variant: tagged_oracle(variant) for variant in variants},
        f"either {left.problem_id} or {right.problem_id}, tagged",
    )


def composed_problem(outer: MultiProblem, inner: MultiProblem) -> MultiProblem:
    """``outer ∘ inner`` when one side is an identity problem."""

    problem_id = f"{outer.problem_id}{COMPOSE}{inner.problem_id}"
    if inner.problem_id.startswith("ID_") and inner.output_space == outer.input_space:
        return replace(outer, problem_id=problem_id)
    if outer.problem_id.startswith("ID_") and outer.input_space == inner.output_space:
        return replace(inner, problem_id=problem_id)
    raise UnknownCatalogEntry(f"{problem_id}: compositions need an identity on the matching space")


def _base_problem(problem_id: str) -> MultiProblem:
    simple = {
        "LPO": lpo_problem,
        "LLPO": llpo_problem,
        "SEP": sep_problem,
        "CIRCLE": circle_problem,
        "ID_NAT": lambda: identity_problem(NAT),
        "ID_CANTOR": lambda: identity_problem(CANTOR),
        "ID_REAL": lambda: identity_problem(REAL),
    }
    if problem_id in simple:
        return simple[problem_id]()
    bases = {"NAT": NAT, "CANTOR": CANTOR, "INTERVAL": UNIT_INTERVAL, "REAL": REAL}
    kind, _, space = problem_id.partition("_")
    if kind in ("C", "UC", "PC") and space in bases:
        if kind != "PC" and space in ("INTERVAL", "REAL"):
            raise UnknownCatalogEntry(f"{problem_id} is not in the catalog; try PC_{space}")
        return choice_problem(kind, bases[space])
    if match := _MLPO.fullmatch(problem_id):
        return mlpo_problem(int(match.group(1)))
    if match := _SEIGEN.fullmatch(problem_id):
        return seigen_problem(int(match.group(1)))
    if match := _LINEQ.fullmatch(problem_id):
        return lineq_problem(int(match.group(1)), int(match.group(2)))
    raise UnknownCatalogEntry(f"unknown problem {problem_id!r}")


@lru_cache(maxsize=None)
def get_problem(problem_id: str) -> MultiProblem:
    """Resolve a catalog id.

    Raises:
        UnknownCatalogEntry: The id does not parse or names no problem.

    Example:
        >>> get_problem("LLPO^2").input_space.label()
        'cantorxcantorxcantorxcantor'
        >>> get_problem("LLPOxLPO").oracle_variants()
        ['least|exact', 'greatest|exact']
    """

    text = problem_id.strip()
    if "+" in text:
        left, right = text.rsplit("+", 1)
        return coproduct_problem(get_problem(left), get_problem(right))
    if "x" in text:
        left, right = text.rsplit("x", 1)
        return product_problem(get_problem(left), get_problem(right))
    if COMPOSE in text:
        left, right = text.rsplit(COMPOSE, 1)
        return composed_problem(get_problem(left), get_problem(right))
    if match := _POWER.fullmatch(text):
        count = int(match.group(2))
        if count < 1:
            raise UnknownCatalogEntry(f"{problem_id}: powers need n >= 1")
        base = get_problem(match.group(1))
        return base if count == 1 else power_problem(base, count)
    return _base_problem(text)


def solve_lpo_family(problem_id: str, x: Name, precision: int, variant: str | None = None) -> Name:
    """Oracle answer for ``LPO``, ``LLPO``, ``MLPO_n`` and their powers.

    Example:
        >>> from advice_kit.names import zero_name
        >>> from advice_kit.names import pair_names
        >>> solve_lpo_family("LLPO", pair_names(zero_name(), zero_name()), 8).take(3).symbols
        (0, 0, 0)
    """

    family = _POWER.sub(r"\1", problem_id.strip())
    if family not in ("LPO", "LLPO") and not _MLPO.fullmatch(family):
        raise UnknownCatalogEntry(f"{problem_id} is not an omniscience principle")
    return get_problem(problem_id).solve(x, precision, variant)


def sep_solve(x: Name, y: Name, precision: int, upper: bool = False) -> Name:
    """Separating set of the sets enumerated by ``x`` and ``y``."""

    return get_problem("SEP").solve(tuple_names([x, y]), precision, "upper" if upper else "lower")


def problem_ids(examples: Sequence[str] = ("LPO^2", "LLPOxLLPO", "ID_NAT+LLPO")) -> List[str]:
    """Base ids plus a few combined ones, for listings."""

    return list(BASE_IDS) + list(examples)
