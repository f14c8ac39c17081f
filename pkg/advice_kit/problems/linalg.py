"""
Eigenvectors and kernels for the linear-algebra problems.

Closed-form interval eigenpairs of 2x2 symmetric matrices, cyclic Jacobi
sweeps for larger symmetric matrices, and exact rational kernels.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import EigenvectorUndetermined, NoConvergence, NoKernel
from ..intervals import Interval, Rational, dyadic_round, sqrt_enclosure

logger = logging.getLogger(__name__)

Matrix = List[List[Fraction]]
JACOBI_SWEEPS = 64


@dataclass(slots=True, frozen=True)
class Eigenpair2:
    """One eigenpair of a 2x2 symmetric interval matrix.

    Attributes:
        value: Enclosure of the eigenvalue.
        vector: Enclosures of the unit eigenvector's components.
        formula: Which of the two closed forms produced the vector; callers
            refining the same eigenvector keep it fixed so the sign never flips.
    """

    value: Interval
    vector: Tuple[Interval, Interval]
    formula: int


def _discriminant(a: Interval, b: Interval, c: Interval) -> Interval:
    return (a - c).square() + 4 * b.square()


def eigen2_vector(a: Interval, b: Interval, c: Interval, larger: bool, formula: int, bits: int) -> Tuple[Interval, Interval]:
    """Unit eigenvector enclosure for ``[[a, b], [b, c]]`` from a fixed closed form.

    Formula 0 is ``(2b, c - a ± Δ)``, formula 1 is ``(a - c ± Δ, 2b)`` where
    ``Δ`` is the square root of the discriminant and ``±`` picks the larger or
    smaller eigenvalue. Components come back as ``[-1, 1]`` while the chosen
    form cannot yet be told apart from zero.
    """

    delta = _discriminant(a, b, c).sqrt(bits)
    signed = delta if larger else -delta
    raw = (2 * b, c - a + signed) if formula == 0 else (a - c + signed, 2 * b)
    norm = (raw[0].square() + raw[1].square()).sqrt(bits)
    if norm.contains_zero():
        unknown = Interval.of(-1, 1)
        return unknown, unknown
    return raw[0] / norm, raw[1] / norm


def symmetric_eigen2(matrix: Sequence[Sequence[Interval]], bits: int = 64) -> List[Eigenpair2]:
    """Eigenpairs of a symmetric 2x2 interval matrix, smaller eigenvalue first.

    Args:
        matrix: ``[[a, b], [b, c]]`` with rational-endpoint enclosures; only the
            upper triangle is read.
        bits: Binary places for the square roots.
    Returns:
        Two eigenpairs whose vector enclosures shrink with the entry widths.
    Raises:
        EigenvectorUndetermined: The discriminant cannot be told apart from zero,
            so the matrix may be scalar and every unit vector may be an eigenvector.

    Example:
        >>> half = Interval.of(Fraction(1, 2))
        >>> pairs = symmetric_eigen2([[half, Interval.of(0)], [Interval.of(0), Interval.of(1)]])
        >>> [str(c) for c in pairs[0].vector]
        ['[-1, -1]', '[0, 0]']
    """

    a, b, c = matrix[0][0], matrix[0][1], matrix[1][1]
    discriminant = _discriminant(a, b, c)
    if discriminant.contains_zero():
        raise EigenvectorUndetermined(f"discriminant {discriminant} may vanish")
    delta = discriminant.sqrt(bits)
    pairs: List[Eigenpair2] = []
    for larger in (False, True):
        value = (a + c + (delta if larger else -delta)) / 2
        best: Tuple[Fraction, int] | None = None
        for formula in (0, 1):
            signed = delta if larger else -delta
            raw = (2 * b, c - a + signed) if formula == 0 else (a - c + signed, 2 * b)
            lower = (raw[0].square() + raw[1].square()).lo
            if best is None or lower > best[0]:
                best = (lower, formula)
        assert best is not None
        vector = eigen2_vector(a, b, c, larger, best[1], bits)
        if vector[0].width() >= 2:
            raise EigenvectorUndetermined("eigenvector norm cannot be separated from zero")
        pairs.append(Eigenpair2(value, vector, best[1]))
    return pairs


def _max_off_diagonal(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigen(matrix: Sequence[Sequence[Rational | float]], tol: float = 2.0**-40) -> List[Tuple[float, np.ndarray]]:
    """Eigenpairs of a symmetric matrix by cyclic Jacobi rotations.

    Args:
        matrix: Symmetric matrix, at most 8x8.
        tol: Target Frobenius norm of the off-diagonal part.
    Returns:
        ``(eigenvalue, unit eigenvector)`` pairs sorted by eigenvalue.
    Raises:
        NoConvergence: The off-diagonal mass stayed above ``tol`` after
            ``JACOBI_SWEEPS`` sweeps.

    Example:
        >>> [round(value, 6) for value, _ in jacobi_eigen([[0, 1], [1, 0]])]
        [-1.0, 1.0]
    """

    a = np.array([[float(v) for v in row] for row in matrix], dtype=float)
    n = a.shape[0]
    if a.shape != (n, n) or not np.allclose(a, a.T):
        raise ValueError("jacobi_eigen needs a symmetric square matrix")
    p = np.identity(n)
    for sweep in range(JACOBI_SWEEPS):
        if _max_off_diagonal(a) < tol:
            logger.debug("jacobi converged after %d sweeps", sweep)
            break
        for k in range(n - 1):
            for l in range(k + 1, n):
                if a[k, l] == 0.0:
                    continue
                diff = a[l, l] - a[k, k]
                if abs(a[k, l]) < abs(diff) * 1.0e-36:
                    t = a[k, l] / diff
                else:
                    phi = diff / (2.0 * a[k, l])
                    t = 1.0 / (abs(phi) + np.sqrt(phi**2 + 1.0))
                    if phi < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t**2 + 1.0)
                s = t * c
                rotation = np.identity(n)
                rotation[k, k] = rotation[l, l] = c
                rotation[k, l] = s
                rotation[l, k] = -s
                a = rotation.T @ a @ rotation
                p = p @ rotation
    else:
        if _max_off_diagonal(a) >= tol:
            raise NoConvergence(f"Jacobi sweeps left off-diagonal mass {_max_off_diagonal(a):.3g}")
    values = np.diag(a)
    order = np.argsort(values, kind="stable")
    return [(float(values[i]), p[:, i].copy()) for i in order]


def rational_kernel(rows: Sequence[Sequence[Rational]]) -> List[Fraction]:
    """A nonzero kernel vector of a rational matrix by exact elimination.

    The first free column gets coefficient 1 and the other free columns 0.

    Raises:
        NoKernel: The matrix has full column rank.

    Example:
        >>> rational_kernel([[0, 1, 0], [0, 1, 1]])
        [Fraction(1, 1), Fraction(0, 1), Fraction(0, 1)]
        >>> rational_kernel([[1, 0]])
        [Fraction(0, 1), Fraction(1, 1)]
    """

    work = [[Fraction(v) for v in row] for row in rows]
    columns = len(work[0]) if work else 0
    pivots: List[int] = []
    row = 0
    for col in range(columns):
        pivot = next((r for r in range(row, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[row], work[pivot] = work[pivot], work[row]
        lead = work[row][col]
        work[row] = [v / lead for v in work[row]]
        for r in range(len(work)):
            if r != row and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [v - factor * w for v, w in zip(work[r], work[row])]
        pivots.append(col)
        row += 1
        if row == len(work):
            break
    free = [col for col in range(columns) if col not in pivots]
    if not free:
        raise NoKernel(f"matrix has full column rank {columns}")
    vector = [Fraction(0)] * columns
    vector[free[0]] = Fraction(1)
    for r, col in enumerate(pivots):
        vector[col] = -work[r][free[0]]
    return vector


def mat_vec(matrix: Sequence[Sequence[Rational]], vector: Sequence[Rational]) -> List[Fraction]:
    return [sum((Fraction(a) * Fraction(v) for a, v in zip(row, vector)), Fraction(0)) for row in matrix]


def kronecker(left: Sequence[Sequence[Rational]], right: Sequence[Sequence[Rational]]) -> Matrix:
    """Kronecker product ``left ⊗ right``.

    Example:
        >>> kronecker([[1, 0], [0, 2]], [[0, 1], [1, 0]])[1]
        [Fraction(1, 1), Fraction(0, 1), Fraction(0, 1), Fraction(0, 1)]
    """

    m = len(right)
    size = len(left) * m
    return [
        [Fraction(left[i // m][j // m]) * Fraction(right[i % m][j % m]) for j in range(size)]
        for i in range(size)
    ]


def _solve(matrix: Matrix, rhs: List[Fraction]) -> List[Fraction] | None:
    """Exact solve of a square system, ``None`` when singular."""

    n = len(matrix)
    work = [row[:] + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return None
        work[col], work[pivot] = work[pivot], work[col]
        for r in range(n):
            if r != col and work[r][col] != 0:
                factor = work[r][col] / work[col][col]
                work[r] = [v - factor * w for v, w in zip(work[r], work[col])]
    return [work[i][n] / work[i][i] for i in range(n)]


def _normalized(vector: Sequence[Fraction], bits: int) -> List[Fraction]:
    squared = sum((v * v for v in vector), Fraction(0))
    norm = sqrt_enclosure(squared, bits + 8).mid()
    return [dyadic_round(v / norm, bits) for v in vector]


def refine_eigenvector(
    matrix: Matrix, value: float, guess: Sequence[float], bits: int, max_rounds: int = 8
) -> List[Fraction]:
    """Dyadic unit eigenvector of a rational symmetric matrix near a float eigenpair.

    Inverse iteration in exact arithmetic, rounding to ``bits`` places after each
    round, stops once the residual ``|Av - ρv|`` (``ρ`` the Rayleigh quotient)
    drops below ``2**-(bits - 8)``. An exactly singular shift means the float
    eigenvalue was exact, and the kernel gives the eigenvector directly.
    """

    n = len(matrix)
    shift = Fraction(value)
    shifted = [[matrix[i][j] - (shift if i == j else 0) for j in range(n)] for i in range(n)]
    vector = [dyadic_round(Fraction(g), bits) for g in guess]
    threshold = Fraction(1, 2 ** max(bits - 8, 0))
    for _ in range(max_rounds):
        solved = _solve(shifted, vector)
        if solved is None:
            return _normalized(rational_kernel(shifted), bits)
        vector = _normalized(solved, bits)
        image = mat_vec(matrix, vector)
        rayleigh = sum((v * w for v, w in zip(vector, image)), Fraction(0))
        residual = max(abs(w - rayleigh * v) for v, w in zip(vector, image))
        if residual < threshold:
            break
    return vector
