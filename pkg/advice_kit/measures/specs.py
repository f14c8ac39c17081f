"""Probability measures on advice spaces."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from ..errors import MalformedName
from ..spaces.descriptors import (
    BAIRE,
    CANTOR,
    NAT,
    REAL,
    UNIT_INTERVAL,
    SpaceDescriptor,
    finite_space,
    product,
)


class MeasureKind(Enum):
    CANTOR_UNIFORM = "cantor"
    LEBESGUE_UNIT = "lebesgue"
    NAT_GEOMETRIC = "nat-geometric"
    BAIRE_GEOMETRIC_PRODUCT = "baire-geometric"
    FINITE_UNIFORM = "finite"
    PRODUCT = "product"
    LEBESGUE_REAL = "lebesgue-real"


@dataclass(slots=True, frozen=True)
class MeasureSpec:
    """A measure on the points of an advice space.

    ``NAT_GEOMETRIC`` gives ``n`` mass ``2**(-n-1)``; the Baire measure is the
    product of that measure over coordinates. ``LEBESGUE_REAL`` is not a
    probability measure and only serves positivity checks.

    Example:
        >>> nat = MeasureSpec(MeasureKind.NAT_GEOMETRIC)
        >>> nat.cylinder_mass((3,))
        Fraction(1, 16)
        >>> MeasureSpec.pair(nat, MeasureSpec(MeasureKind.CANTOR_UNIFORM)).space.label()
        'natxcantor'
    """

    kind: MeasureKind
    size: int | None = None
    left: "MeasureSpec | None" = None
    right: "MeasureSpec | None" = None

    def __post_init__(self) -> None:
        if self.kind is MeasureKind.FINITE_UNIFORM and (self.size is None or self.size < 1):
            raise MalformedName("uniform measures on Finite(k) need k >= 1")
        if self.kind is MeasureKind.PRODUCT and (self.left is None or self.right is None):
            raise MalformedName("product measures need two factors")

    @classmethod
    def pair(cls, left: "MeasureSpec", right: "MeasureSpec") -> "MeasureSpec":
        return cls(MeasureKind.PRODUCT, left=left, right=right)

    @property
    def samplable(self) -> bool:
        if self.kind is MeasureKind.PRODUCT:
            assert self.left is not None and self.right is not None
            return self.left.samplable and self.right.samplable
        return self.kind is not MeasureKind.LEBESGUE_REAL

    @property
    def space(self) -> SpaceDescriptor:
        match self.kind:
            case MeasureKind.CANTOR_UNIFORM:
                return CANTOR
            case MeasureKind.LEBESGUE_UNIT:
                return UNIT_INTERVAL
            case MeasureKind.NAT_GEOMETRIC:
                return NAT
            case MeasureKind.BAIRE_GEOMETRIC_PRODUCT:
                return BAIRE
            case MeasureKind.FINITE_UNIFORM:
                assert self.size is not None
                return finite_space(self.size)
            case MeasureKind.PRODUCT:
                assert self.left is not None and self.right is not None
                return product(self.left.space, self.right.space)
            case _:
                return REAL

    def cylinder_mass(self, word: Sequence[int]) -> Fraction:
        """Mass of the set of names extending ``word``.

        Discrete points are named by constant sequences, so a word naming a
        Finite or Natural point has the mass of that point when it is constant
        and mass 0 otherwise.
        """

        symbols = tuple(word)
        match self.kind:
            case MeasureKind.CANTOR_UNIFORM:
                return Fraction(1, 2 ** len(symbols))
            case MeasureKind.BAIRE_GEOMETRIC_PRODUCT:
                mass = Fraction(1)
                for n in symbols:
                    mass /= 2 ** (n + 1)
                return mass
            case MeasureKind.NAT_GEOMETRIC | MeasureKind.FINITE_UNIFORM:
                if not symbols:
                    return Fraction(1)
                if any(s != symbols[0] for s in symbols):
                    return Fraction(0)
                if self.kind is MeasureKind.NAT_GEOMETRIC:
                    return Fraction(1, 2 ** (symbols[0] + 1))
                assert self.size is not None
                return Fraction(1, self.size) if symbols[0] < self.size else Fraction(0)
            case _:
                raise ValueError(f"{self.label()} has no cylinder masses")

    def label(self) -> str:
        match self.kind:
            case MeasureKind.FINITE_UNIFORM:
                return f"finite:{self.size}"
            case MeasureKind.PRODUCT:
                assert self.left is not None and self.right is not None
                return f"{self.left.label()}*{self.right.label()}"
            case _:
                return self.kind.value


CANTOR_UNIFORM = MeasureSpec(MeasureKind.CANTOR_UNIFORM)
LEBESGUE_UNIT = MeasureSpec(MeasureKind.LEBESGUE_UNIT)
NAT_GEOMETRIC = MeasureSpec(MeasureKind.NAT_GEOMETRIC)
BAIRE_GEOMETRIC = MeasureSpec(MeasureKind.BAIRE_GEOMETRIC_PRODUCT)
LEBESGUE_REAL = MeasureSpec(MeasureKind.LEBESGUE_REAL)


def finite_uniform(size: int) -> MeasureSpec:
    return MeasureSpec(MeasureKind.FINITE_UNIFORM, size)


def parse_measure(text: str) -> MeasureSpec:
    """Parse ``cantor``, ``lebesgue``, ``nat-geometric``, ``baire-geometric``,
    ``lebesgue-real``, ``finite:K`` or ``A*B``.

    Example:
        >>> parse_measure("finite:3*cantor").label()
        'finite:3*cantor'
    """

    body = text.strip().lower()
    if "*" in body:
        left, right = body.split("*", 1)
        return MeasureSpec.pair(parse_measure(left), parse_measure(right))
    if body.startswith("finite:") and body[7:].isdigit():
        return finite_uniform(int(body[7:]))
    for spec in (CANTOR_UNIFORM, LEBESGUE_UNIT, NAT_GEOMETRIC, BAIRE_GEOMETRIC, LEBESGUE_REAL):
        if spec.kind.value == body:
            return spec
    raise MalformedName(f"unknown measure {text!r}")
