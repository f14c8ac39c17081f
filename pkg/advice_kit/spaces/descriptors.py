"""Descriptors of the represented spaces the package computes on."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..errors import MalformedName
from ..names import BINARY, NATURAL, Alphabet
from .reals import REAL_ALPHABET


class SpaceKind(Enum):
    NAT = "nat"
    FINITE = "finite"
    CANTOR = "cantor"
    BAIRE = "baire"
    SIERPINSKI = "sierpinski"
    REAL_SIGNED = "real"
    UNIT_BINARY = "unit-binary"
    UNIT_INTERVAL = "interval"
    OPEN = "open"
    CLOSED = "closed"
    PRODUCT = "product"
    COPRODUCT = "coproduct"


HYPERSPACE_BASES = frozenset(
    {
        SpaceKind.CANTOR,
        SpaceKind.BAIRE,
        SpaceKind.REAL_SIGNED,
        SpaceKind.UNIT_BINARY,
        SpaceKind.UNIT_INTERVAL,
        SpaceKind.NAT,
    }
)

_NON_INJECTIVE = frozenset(
    {
        SpaceKind.SIERPINSKI,
        SpaceKind.REAL_SIGNED,
        SpaceKind.UNIT_BINARY,
        SpaceKind.UNIT_INTERVAL,
        SpaceKind.OPEN,
        SpaceKind.CLOSED,
    }
)

INTERVAL_CODED = frozenset({SpaceKind.REAL_SIGNED, SpaceKind.UNIT_INTERVAL, SpaceKind.UNIT_BINARY})


@dataclass(slots=True, frozen=True)
class SpaceDescriptor:
    """A represented space.

    ``left`` carries the base space of Open/Closed and the left factor of
    Product/Coproduct; ``right`` the right factor.

    Example:
        >>> product(CANTOR, NAT).injective
        True
        >>> closed_space(REAL).injective
        False
    """

    kind: SpaceKind
    size: int | None = None
    left: "SpaceDescriptor | None" = None
    right: "SpaceDescriptor | None" = None

    def __post_init__(self) -> None:
        if self.kind is SpaceKind.FINITE and (self.size is None or self.size < 1):
            raise MalformedName("Finite(k) spaces need k >= 1")
        if self.kind in (SpaceKind.OPEN, SpaceKind.CLOSED):
            if self.left is None or self.left.kind not in HYPERSPACE_BASES:
                raise MalformedName(f"no hyperspace over {self.left}")
        if self.kind in (SpaceKind.PRODUCT, SpaceKind.COPRODUCT):
            if self.left is None or self.right is None:
                raise MalformedName("products need two factors")

    @property
    def injective(self) -> bool:
        """Whether every point has exactly one name."""

        if self.kind in _NON_INJECTIVE:
            return False
        if self.kind in (SpaceKind.PRODUCT, SpaceKind.COPRODUCT):
            assert self.left is not None and self.right is not None
            return self.left.injective and self.right.injective
        return True

    @property
    def alphabet(self) -> Alphabet:
        """Alphabet of the names of points."""

        match self.kind:
            case SpaceKind.CANTOR | SpaceKind.UNIT_BINARY | SpaceKind.SIERPINSKI:
                return BINARY
            case SpaceKind.REAL_SIGNED | SpaceKind.UNIT_INTERVAL:
                return REAL_ALPHABET
            case SpaceKind.FINITE:
                assert self.size is not None
                return Alphabet.finite(self.size)
            case SpaceKind.PRODUCT:
                assert self.left is not None and self.right is not None
                return self.left.alphabet.join(self.right.alphabet)
            case _:
                return NATURAL

    @property
    def base(self) -> "SpaceDescriptor":
        if self.left is None:
            raise MalformedName(f"{self.label()} has no base space")
        return self.left

    def label(self) -> str:
        match self.kind:
            case SpaceKind.FINITE:
                return f"finite{self.size}"
            case SpaceKind.OPEN | SpaceKind.CLOSED:
                return f"{self.kind.value}({self.base.label()})"
            case SpaceKind.PRODUCT:
                assert self.left is not None and self.right is not None
                return f"{self.left.label()}x{self.right.label()}"
            case SpaceKind.COPRODUCT:
                assert self.left is not None and self.right is not None
                return f"{self.left.label()}+{self.right.label()}"
            case _:
                return self.kind.value


NAT = SpaceDescriptor(SpaceKind.NAT)
CANTOR = SpaceDescriptor(SpaceKind.CANTOR)
BAIRE = SpaceDescriptor(SpaceKind.BAIRE)
SIERPINSKI = SpaceDescriptor(SpaceKind.SIERPINSKI)
REAL = SpaceDescriptor(SpaceKind.REAL_SIGNED)
UNIT_BINARY = SpaceDescriptor(SpaceKind.UNIT_BINARY)
UNIT_INTERVAL = SpaceDescriptor(SpaceKind.UNIT_INTERVAL)


def finite_space(size: int) -> SpaceDescriptor:
    return SpaceDescriptor(SpaceKind.FINITE, size)


def open_space(base: SpaceDescriptor) -> SpaceDescriptor:
    return SpaceDescriptor(SpaceKind.OPEN, left=base)


def closed_space(base: SpaceDescriptor) -> SpaceDescriptor:
    return SpaceDescriptor(SpaceKind.CLOSED, left=base)


def product(left: SpaceDescriptor, right: SpaceDescriptor) -> SpaceDescriptor:
    return SpaceDescriptor(SpaceKind.PRODUCT, left=left, right=right)


def coproduct(left: SpaceDescriptor, right: SpaceDescriptor) -> SpaceDescriptor:
    return SpaceDescriptor(SpaceKind.COPRODUCT, left=left, right=right)


def power(space: SpaceDescriptor, count: int) -> SpaceDescriptor:
    """Right-nested product of ``count`` copies; n-tuples are named by interleaving."""

    result = space
    for _ in range(count - 1):
        result = product(space, result)
    return result


_BY_LABEL = {
    "nat": NAT,
    "cantor": CANTOR,
    "baire": BAIRE,
    "sierpinski": SIERPINSKI,
    "real": REAL,
    "unit-binary": UNIT_BINARY,
    "interval": UNIT_INTERVAL,
}


def parse_space(label: str) -> SpaceDescriptor:
    """Parse a base-space label such as ``cantor`` or ``finite3``."""

    key = label.strip().lower()
    if key.startswith("finite") and key[6:].isdigit():
        return finite_space(int(key[6:]))
    try:
        return _BY_LABEL[key]
    except KeyError as exc:
        raise MalformedName(f"unknown space {label!r}") from exc
