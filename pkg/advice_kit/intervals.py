"""Exact closed intervals with rational endpoints.

Every decision the package makes about a real number (does this eigenvector
component exclude zero, which side of a gap does this point sit on) is made by
comparing ``Interval`` endpoints, so rounding never enters a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, isqrt
from typing import Iterable

Rational = Fraction | int


@dataclass(slots=True, frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` with exact rational endpoints.

    Example:
        >>> Interval.of(1, 2) * Interval.of(-1, 3)
        Interval(lo=Fraction(-2, 1), hi=Fraction(6, 1))
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def of(cls, lo: Rational, hi: Rational | None = None) -> "Interval":
        """Build an interval, or a point interval when ``hi`` is omitted."""

        low = Fraction(lo)
        return cls(low, low if hi is None else Fraction(hi))

    @classmethod
    def around(cls, centre: Rational, radius: Rational) -> "Interval":
        """Return ``[centre - radius, centre + radius]``."""

        c = Fraction(centre)
        r = Fraction(radius)
        return cls(c - r, c + r)

    def __add__(self, other: "Interval | Rational") -> "Interval":
        o = _coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: "Interval | Rational") -> "Interval":
        return self + (-_coerce(other))

    def __rsub__(self, other: Rational) -> "Interval":
        return _coerce(other) - self

    def __mul__(self, other: "Interval | Rational") -> "Interval":
        o = _coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other: "Interval | Rational") -> "Interval":
        o = _coerce(other)
        if o.contains_zero():
            raise ZeroDivisionError(f"divisor {o} contains zero")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def square(self) -> "Interval":
        """Return the exact range of ``t * t`` over the interval.

        Example:
            >>> Interval.of(-1, 2).square()
            Interval(lo=Fraction(0, 1), hi=Fraction(4, 1))
        """

        lo2, hi2 = self.lo * self.lo, self.hi * self.hi
        if self.contains_zero():
            return Interval(Fraction(0), max(lo2, hi2))
        return Interval(min(lo2, hi2), max(lo2, hi2))

    def sqrt(self, bits: int) -> "Interval":
        """Enclose the square roots of the non-negative part to ``bits`` binary places."""

        return Interval(
            sqrt_enclosure(max(self.lo, Fraction(0)), bits).lo,
            sqrt_enclosure(max(self.hi, Fraction(0)), bits).hi,
        )

    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value: "Interval | Rational") -> bool:
        o = _coerce(value)
        return self.lo <= o.lo and o.hi <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def excludes_zero(self) -> bool:
        return not self.contains_zero()

    def magnitude(self) -> Fraction:
        """Largest absolute value attained."""

        return max(abs(self.lo), abs(self.hi))

    def mignitude(self) -> Fraction:
        """Smallest absolute value attained."""

        if self.contains_zero():
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    def abs(self) -> "Interval":
        return Interval(self.mignitude(), self.magnitude())

    def subset_of(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersect(self, other: "Interval") -> "Interval | None":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else None

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _coerce(value: "Interval | Rational") -> Interval:
    if isinstance(value, Interval):
        return value
    return Interval.of(value)


def interval_sum(items: Iterable[Interval]) -> Interval:
    """Add up intervals, starting from the point zero."""

    total = Interval.of(0)
    for item in items:
        total = total + item
    return total


def sqrt_enclosure(value: Rational, bits: int) -> Interval:
    """Enclose ``sqrt(value)`` between consecutive multiples of ``2**-bits``.

    Args:
        value: Non-negative rational.
        bits: Binary places of the enclosure.
    Returns:
        Interval of width at most ``2**-bits`` containing the square root.

    Example:
        >>> sqrt_enclosure(2, 4)
        Interval(lo=Fraction(11, 8), hi=Fraction(23, 16))
    """

    q = Fraction(value)
    if q < 0:
        raise ValueError(f"square root of negative value {q}")
    scale = 4**bits
    lower = isqrt(floor(q * scale))
    upper = isqrt(ceil(q * scale))
    if upper * upper < q * scale:
        upper += 1
    return Interval(Fraction(lower, 2**bits), Fraction(upper, 2**bits))


def dyadic_round(value: Rational, bits: int) -> Fraction:
    """Round to the nearest multiple of ``2**-bits`` (ties upward).

    Example:
        >>> dyadic_round(Fraction(1, 3), 3)
        Fraction(3, 8)
    """

    scale = 2**bits
    return Fraction(floor(Fraction(value) * scale + Fraction(1, 2)), scale)


def simplest_rational_in(lo: Rational, hi: Rational) -> Fraction:
    """Return the rational with the smallest denominator inside ``[lo, hi]``.

    Oracles use this to recover a rational matrix from the enclosures its
    names give at oracle precision.

    Example:
        >>> simplest_rational_in(Fraction(33, 100), Fraction(34, 100))
        Fraction(1, 3)
        >>> simplest_rational_in(Fraction(-7, 4), Fraction(-3, 2))
        Fraction(-3, 2)
    """

    low, high = Fraction(lo), Fraction(hi)
    if low > high:
        raise ValueError(f"empty range [{low}, {high}]")
    if low <= 0 <= high:
        return Fraction(0)
    if high < 0:
        return -simplest_rational_in(-high, -low)
    whole = ceil(low)
    if whole <= high:
        return Fraction(whole)
    base = floor(low)
    return base + 1 / simplest_rational_in(1 / (high - base), 1 / (low - base))


def zigzag(value: int) -> int:
    """Map integers onto naturals: ``0, -1, 1, -2, 2 -> 0, 1, 2, 3, 4``.

    Example:
        >>> [zigzag(v) for v in (0, -1, 1, -2, 2)]
        [0, 1, 2, 3, 4]
    """

    return 2 * value if value >= 0 else -2 * value - 1


def unzigzag(code: int) -> int:
    """Inverse of :func:`zigzag`."""

    if code < 0:
        raise ValueError(f"zigzag codes are natural numbers, got {code}")
    return code // 2 if code % 2 == 0 else -(code + 1) // 2
