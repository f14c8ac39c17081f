"""Advice schemes: an advice space together with the kind of sets allowed as advice."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..errors import MalformedName, SchemeMismatch
from ..measures.specs import (
    BAIRE_GEOMETRIC,
    CANTOR_UNIFORM,
    LEBESGUE_REAL,
    LEBESGUE_UNIT,
    NAT_GEOMETRIC,
    MeasureSpec,
    finite_uniform,
    parse_measure,
)
from ..spaces.descriptors import CANTOR, NAT, SpaceDescriptor, finite_space, product


class AdviceFamily(Enum):
    DISCRETE_ALL = "discrete"
    CLOSED_ALL = "closed"
    OPEN_ALL = "open"
    UNIQUE = "unique"
    RANDOM_POSITIVE = "random"
    EFFECTIVE_CLOSED = "closed-effective"
    COMPOSITE = "composite"


@dataclass(slots=True, frozen=True)
class AdviceScheme:
    """Advice space ``Z`` and the house of advice sets.

    ``COMPOSITE`` marks houses built by the combinators (products, tagged
    unions, compositions); their sets are described by the advice machine's
    family rather than by a single kind.

    Example:
        >>> AdviceScheme(NAT, AdviceFamily.RANDOM_POSITIVE, NAT_GEOMETRIC).label()
        'advice:random-nat-geometric'
        >>> AdviceScheme(CANTOR, AdviceFamily.RANDOM_POSITIVE)
        Traceback (most recent call last):
        ...
        advice_kit.errors.SchemeMismatch: random advice on cantor needs a measure
    """

    space: SpaceDescriptor
    family: AdviceFamily
    measure: MeasureSpec | None = None

    def __post_init__(self) -> None:
        if self.family is AdviceFamily.RANDOM_POSITIVE:
            if self.measure is None:
                raise SchemeMismatch(f"random advice on {self.space.label()} needs a measure")
            if self.measure.space != self.space:
                raise SchemeMismatch(
                    f"measure {self.measure.label()} lives on {self.measure.space.label()}, "
                    f"not {self.space.label()}"
                )

    @property
    def random(self) -> bool:
        return self.family is AdviceFamily.RANDOM_POSITIVE

    @property
    def effective(self) -> bool:
        return self.family is AdviceFamily.EFFECTIVE_CLOSED

    def label(self) -> str:
        if self.random:
            assert self.measure is not None
            return f"advice:random-{self.measure.label()}"
        if self.family is AdviceFamily.DISCRETE_ALL and self.space.size is not None:
            return f"advice:finite:{self.space.size}"
        if self.family is AdviceFamily.COMPOSITE:
            return f"advice:composite({self.space.label()})"
        return f"advice:{self.family.value}({self.space.label()})"


def product_scheme(left: AdviceScheme, right: AdviceScheme) -> AdviceScheme:
    """Scheme of paired advice; two random schemes give the product measure."""

    space = product(left.space, right.space)
    if left.random and right.random:
        assert left.measure is not None and right.measure is not None
        return AdviceScheme(space, AdviceFamily.RANDOM_POSITIVE, MeasureSpec.pair(left.measure, right.measure))
    return AdviceScheme(space, AdviceFamily.COMPOSITE)


_RANDOM = {
    "cantor": CANTOR_UNIFORM,
    "interval": LEBESGUE_UNIT,
    "nat": NAT_GEOMETRIC,
    "baire": BAIRE_GEOMETRIC,
    "real": LEBESGUE_REAL,
}


def parse_scheme(text: str) -> AdviceScheme:
    """Parse an advice-scheme literal.

    Literals: ``advice:finite:K``, ``advice:nat``, ``advice:closed-effective``
    (over the naturals), ``advice:unique``, ``advice:random-cantor`` and the
    other ``advice:random-*`` spaces, or ``advice:random-<measure>``.

    Example:
        >>> parse_scheme("advice:finite:3").space.label()
        'finite3'
        >>> parse_scheme("advice:random-cantor").measure.label()
        'cantor'
    """

    body = text.strip()
    if not body.startswith("advice:"):
        raise MalformedName(f"advice schemes start with 'advice:', got {text!r}")
    body = body[len("advice:") :]
    if body.startswith("finite:") and body[7:].isdigit():
        return AdviceScheme(finite_space(int(body[7:])), AdviceFamily.DISCRETE_ALL)
    if body == "nat":
        return AdviceScheme(NAT, AdviceFamily.DISCRETE_ALL)
    if body == "closed-effective":
        return AdviceScheme(NAT, AdviceFamily.EFFECTIVE_CLOSED)
    if body == "unique":
        return AdviceScheme(finite_space(1), AdviceFamily.UNIQUE)
    if body.startswith("random-"):
        key = body[len("random-") :]
        measure = _RANDOM[key] if key in _RANDOM else parse_measure(key)
        return AdviceScheme(measure.space, AdviceFamily.RANDOM_POSITIVE, measure)
    raise MalformedName(f"unknown advice scheme {text!r}")


def finite_scheme(size: int) -> AdviceScheme:
    return AdviceScheme(finite_space(size), AdviceFamily.DISCRETE_ALL)


def random_finite_scheme(size: int) -> AdviceScheme:
    return AdviceScheme(finite_space(size), AdviceFamily.RANDOM_POSITIVE, finite_uniform(size))
