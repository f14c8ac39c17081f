"""
Test oracles for the catalog problems.

An oracle stands in for an arbitrary realizer of a target problem, so it may
look at the finite description of its input (eventually periodic names are
decided exactly) and at closed-set names far deeper than a verifier would.
Every oracle returns a ``Name``; real answers are exact lazily computed names
or names of dyadic approximations within ``2**-precision``.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache, partial
from typing import Iterator, List, Sequence, Tuple

from ..constants import SCAN_DEPTH
from ..errors import DomainViolated, EigenvectorUndetermined
from ..intervals import Interval, simplest_rational_in
from ..names import BINARY, Name, computed_name, constant_name, memoized_name, tuple_names, untuple_name
from ..spaces.descriptors import SpaceDescriptor, SpaceKind
from ..spaces.reals import (
    encode_rational,
    exact_value,
    interval_map_machine,
    read_real_tuple,
    real_enclosure,
    real_name_from_enclosures,
)
from ..spaces.sets import (
    UNIT,
    ClosedSetName,
    OpenSetName,
    cantor_covered,
    cantor_remaining_mass,
    remaining_intervals,
    remaining_naturals,
)
from .base import Oracle, description_length, zero_status
from .linalg import Matrix, eigen2_vector, jacobi_eigen, rational_kernel, refine_eigenvector, symmetric_eigen2

logger = logging.getLogger(__name__)

REAL_WINDOW = Interval.of(-(2**16), 2**16)
ADVERSARIAL_ANGLES = 16


def _is_zero(name: Name, precision: int) -> bool:
    """Zeroness as an oracle sees it: exact for periodic names, a prefix scan otherwise."""

    size = description_length(name)
    status = zero_status(name, max(precision, size or 0))
    return bool(status) if status is not None else True


def _real_is_zero(name: Name, precision: int) -> bool:
    if name.periodic is not None:
        return exact_value(name) == 0
    return real_enclosure(name, precision).contains_zero()


def lpo_oracle(x: Name, precision: int) -> Name:
    """``0`` when ``x = 0^ω``, otherwise ``1``."""

    return constant_name(0 if _is_zero(x, precision) else 1)


def llpo_oracle(prefer_last: bool) -> Oracle:
    """Index of a component equal to ``0^ω``; ties go to the least (or greatest) index."""

    def oracle(x: Name, precision: int) -> Name:
        zeros = [i for i, part in enumerate(untuple_name(x, 2)) if _is_zero(part, precision)]
        if not zeros:
            raise DomainViolated("both LLPO components contain a 1")
        return constant_name(zeros[-1] if prefer_last else zeros[0])

    return oracle


def mlpo_oracle(count: int, prefer_last: bool) -> Oracle:
    """1-based index of a zero component among ``count`` reals."""

    def oracle(x: Name, precision: int) -> Name:
        parts = untuple_name(x, count)
        zeros = [i + 1 for i, part in enumerate(parts) if _real_is_zero(part, precision)]
        if not zeros:
            raise DomainViolated(f"no component of the MLPO_{count} instance is zero")
        return constant_name(zeros[-1] if prefer_last else zeros[0])

    return oracle


def sep_oracle(upper: bool) -> Oracle:
    """Separating set: ``z = x`` (lower) or ``z = 1 - y`` (upper).

    Raises DomainViolated when ``x(i) = y(i) = 1`` shows up within ``precision``.
    """

    def oracle(x: Name, precision: int) -> Name:
        left, right = untuple_name(x, 2)
        for i, (a, b) in enumerate(zip(left.take(precision), right.take(precision))):
            if a == 1 and b == 1:
                raise DomainViolated(f"both SEP enumerations contain {i}")
        if upper:
            return computed_name(BINARY, f"sep-upper({x.describe()})", lambda: (1 - b for b in right.stream()))
        return computed_name(BINARY, f"sep-lower({x.describe()})", left.stream)

    return oracle


def identity_oracle(x: Name, precision: int) -> Name:
    return x


def circle_oracle(x: Name, precision: int) -> Name:
    """``x`` for rationals in ``[0, 1)``, ``x - 1`` otherwise.

    Only eventually periodic names are recognised as rationals.
    """

    if x.periodic is not None:
        value = exact_value(x)
        return encode_rational(value if value < 1 else value - 1)
    return interval_map_machine("circle-shift", 1, lambda xs: xs[0] - 1).on(x)


def closed_of(space: SpaceDescriptor, x: Name) -> ClosedSetName:
    """Read ``x`` as the complement enumeration of a closed subset of ``space``."""

    return ClosedSetName(space, OpenSetName(space, x))


def nat_choice_oracle(space: SpaceDescriptor) -> Oracle:
    """Least natural not excluded within the scan."""

    def oracle(x: Name, precision: int) -> Name:
        scan = max(SCAN_DEPTH, precision)
        remaining = remaining_naturals(closed_of(space, x), scan, scan)
        if not remaining:
            raise DomainViolated(f"every natural below {scan} is excluded")
        return constant_name(remaining[0])

    return oracle


def _cantor_descent(excluded: Sequence[Tuple[int, ...]], strategy: str) -> Iterator[int]:
    word: Tuple[int, ...] = ()
    pad = 1 if strategy == "heaviest-right" else 0
    longest = max((len(u) for u in excluded), default=0)
    while True:
        if len(word) >= longest:
            yield pad
            continue
        left, right = word + (0,), word + (1,)
        if strategy == "leftmost":
            bit = 0 if not cantor_covered(left, excluded) else 1
        else:
            left_mass = cantor_remaining_mass(left, excluded)
            right_mass = cantor_remaining_mass(right, excluded)
            if strategy == "heaviest":
                bit = 0 if left_mass >= right_mass else 1
            else:
                bit = 1 if right_mass >= left_mass else 0
        word += (bit,)
        yield bit


def cantor_choice_oracle(space: SpaceDescriptor, strategy: str) -> Oracle:
    """Point of a closed Cantor set found by descending through uncovered cylinders.

    Strategies: ``leftmost``, ``heaviest`` (larger remaining mass, ties left,
    then 0s) and ``heaviest-right`` (ties right, then 1s).
    """

    def oracle(x: Name, precision: int) -> Name:
        excluded = closed_of(space, x).excluded(max(SCAN_DEPTH, precision))
        if cantor_covered((), excluded):
            raise DomainViolated("the closed set is empty")
        label = f"cantor-choice:{strategy}({x.describe()})"
        return computed_name(BINARY, label, partial(_cantor_descent, tuple(excluded), strategy))

    return oracle


def interval_choice_oracle(space: SpaceDescriptor, side: str) -> Oracle:
    """Left or right endpoint of the first interval left after the scan."""

    window = REAL_WINDOW if space.kind is SpaceKind.REAL_SIGNED else UNIT

    def oracle(x: Name, precision: int) -> Name:
        pieces = remaining_intervals(closed_of(space, x), max(SCAN_DEPTH, precision), window)
        if not pieces:
            raise DomainViolated(f"the closed set misses the window {window}")
        first = pieces[0]
        point = first.lo if side == "left" else first.hi
        logger.debug("interval choice %s picked %s from %s", side, point, first)
        return encode_rational(point)

    return oracle


def read_matrix(x: Name, rows: int, cols: int, digits: int) -> List[List[Interval]]:
    """Enclosures of a row-major interleaved matrix name."""

    flat = read_real_tuple(x, rows * cols, digits)
    return [flat[r * cols : (r + 1) * cols] for r in range(rows)]


def recover_rational_matrix(entries: Sequence[Sequence[Interval]], symmetric: bool = False) -> Matrix:
    """Simplest rationals inside each enclosure; symmetric matrices use both triangles."""

    rows = len(entries)
    result = [[simplest_rational_in(e.lo, e.hi) for e in row] for row in entries]
    if symmetric:
        for i in range(rows):
            for j in range(i + 1, rows):
                shared = entries[i][j].intersect(entries[j][i])
                if shared is None:
                    raise DomainViolated(f"entries ({i},{j}) and ({j},{i}) differ")
                result[i][j] = result[j][i] = simplest_rational_in(shared.lo, shared.hi)
    return result


def _unit_vector(t: Fraction) -> Tuple[Fraction, Fraction]:
    """Rational point ``((1 - t²)/(1 + t²), 2t/(1 + t²))`` of the unit circle."""

    denominator = 1 + t * t
    return (1 - t * t) / denominator, 2 * t / denominator


def adversarial_parameter(index: int) -> Fraction:
    return Fraction(index, 4) - 2


def seigen2_oracle(larger: bool, sign: int, fallback: Fraction = Fraction(0)) -> Oracle:
    """Exact unit eigenvector of a 2x2 symmetric matrix name.

    The closed form is chosen once, at the first precision among ``p``, ``2p``,
    ``4p`` that separates the eigenvalues, and reused for every later digit.
    When no precision separates them the matrix is treated as scalar and the
    rational unit vector for ``fallback`` is returned.

    This is a finite-precision stand-in: a matrix whose eigenvalue gap stays
    hidden in the first ``4p`` digits of its entries is answered as if it were
    scalar, and that answer need not be an eigenvector. Through
    ``llpo-seigen2`` this means an LLPO instance whose first 1 sits beyond about
    ``4p`` bits can be answered wrongly; raise ``precision`` for such fixtures.
    """

    def oracle(x: Name, precision: int) -> Name:
        label = f"seigen2[{'max' if larger else 'min'}{'-' if sign < 0 else '+'}]({x.describe()})"
        matrix = memoized_name(x)
        chosen: int | None = None
        for digits in (precision, 2 * precision, 4 * precision):
            a, b, _, c = read_real_tuple(matrix, 4, digits)
            try:
                pairs = symmetric_eigen2([[a, b], [b, c]], bits=digits + 8)
            except EigenvectorUndetermined:
                continue
            chosen = pairs[1 if larger else 0].formula
            break
        if chosen is None:
            u = _unit_vector(fallback)
            logger.debug("scalar-looking matrix, answering %s", u)
            return tuple_names([encode_rational(sign * u[0]), encode_rational(sign * u[1])])
        formula = chosen

        @lru_cache(maxsize=None)
        def vector_at(p: int) -> Tuple[Interval, Interval]:
            a, b, _, c = read_real_tuple(matrix, 4, p)
            v = eigen2_vector(a, b, c, larger, formula, bits=p + 8)
            return sign * v[0], sign * v[1]

        def enclosure(component: int, p: int) -> Interval:
            return vector_at(p)[component]

        return tuple_names(
            [real_name_from_enclosures(f"{label}.{j}", partial(enclosure, j), exponent=0) for j in (0, 1)]
        )

    return oracle


def seigen_oracle(n: int, larger: bool, sign: int) -> Oracle:
    """Unit eigenvector of an ``n x n`` symmetric matrix with small rational entries.

    The entries are recovered as the simplest rationals in their enclosures,
    Jacobi sweeps locate the eigenpair, and exact inverse iteration refines it
    to dyadic components within ``2**-precision``.
    """

    def oracle(x: Name, precision: int) -> Name:
        matrix = recover_rational_matrix(read_matrix(x, n, n, precision), symmetric=True)
        pairs = jacobi_eigen(matrix)
        value, guess = pairs[-1] if larger else pairs[0]
        vector = refine_eigenvector(matrix, value, [float(g) for g in guess], bits=precision + 12)
        return tuple_names([encode_rational(sign * v) for v in vector])

    return oracle


def lineq_oracle(rows: int, cols: int, scale: Fraction) -> Oracle:
    """``scale`` times the canonical rational kernel vector."""

    def oracle(x: Name, precision: int) -> Name:
        matrix = recover_rational_matrix(read_matrix(x, rows, cols, precision))
        vector = rational_kernel(matrix)
        return tuple_names([encode_rational(scale * v) for v in vector])

    return oracle
