"""
Advice sets as the harness sees them.

An advice set answers two questions: whether a candidate advice name can
still name a point of the set after looking ``depth`` deep, and a few
finitely described members to run machines with. Sets nest the way advice
houses do: products, tagged unions, compositions and pullbacks wrap other sets.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import islice
from typing import Callable, List, Sequence, Tuple

from ..constants import SCAN_DEPTH
from ..errors import AdviceKitError, FuelExhausted
from ..machines.machine import PrefixMachine
from ..names import Name, constant_name, drop_name, pair_names, prepend_name, unpair_name
from ..problems.base import MultiProblem, Oracle, Verdict
from ..problems.oracles import cantor_choice_oracle, interval_choice_oracle
from ..spaces.descriptors import INTERVAL_CODED, SpaceDescriptor, SpaceKind
from ..spaces.reals import real_enclosure
from ..spaces.sets import ClosedSetName, Membership, closed_consistent_at_depth, remaining_naturals

logger = logging.getLogger(__name__)


class AdviceSet:
    """Base class; subclasses are frozen dataclasses."""

    def contains(self, w: Name, depth: int) -> bool:
        raise NotImplementedError

    def members(self, count: int) -> List[Name]:
        raise NotImplementedError

    def describe(self) -> str:
        return type(self).__name__


def _constant_value(w: Name, depth: int) -> int | None:
    symbols = w.take(max(depth, 1)).symbols
    return symbols[0] if all(s == symbols[0] for s in symbols) else None


@dataclass(slots=True, frozen=True)
class DiscreteSet(AdviceSet):
    """Finitely many points of a discrete space, each named by a constant sequence.

    Example:
        >>> from advice_kit.spaces.descriptors import finite_space
        >>> branch = DiscreteSet(finite_space(2), (1,))
        >>> branch.contains(constant_name(1), 8), branch.contains(constant_name(0), 8)
        (True, False)
    """

    space: SpaceDescriptor
    points: Tuple[int, ...]

    def contains(self, w: Name, depth: int) -> bool:
        return _constant_value(w, depth) in self.points

    def members(self, count: int) -> List[Name]:
        return [constant_name(p, self.space.alphabet) for p in self.points[:count]]

    def describe(self) -> str:
        return "{" + ", ".join(str(p) for p in self.points) + "}"


@dataclass(slots=True, frozen=True)
class SingletonSet(AdviceSet):
    point: Name

    def contains(self, w: Name, depth: int) -> bool:
        return w.take(depth).symbols == self.point.take(depth).symbols

    def members(self, count: int) -> List[Name]:
        return [self.point][:count]

    def describe(self) -> str:
        return "{" + self.point.describe() + "}"


@dataclass(slots=True, frozen=True)
class ClosedAdviceSet(AdviceSet):
    """A closed subset given by negative information.

    Example:
        >>> from advice_kit.spaces.sets import closed_nat_only
        >>> only_three = ClosedAdviceSet(closed_nat_only([3]))
        >>> only_three.contains(constant_name(3), 16), [m.symbol(0) for m in only_three.members(2)]
        (True, [3])
    """

    closed: ClosedSetName

    def contains(self, w: Name, depth: int) -> bool:
        space = self.closed.space
        if space.kind is SpaceKind.NAT:
            value = _constant_value(w, depth)
            if value is None:
                return False
            membership = closed_consistent_at_depth(self.closed, (value,), depth)
        elif space.kind in INTERVAL_CODED:
            membership = closed_consistent_at_depth(self.closed, real_enclosure(w, depth), depth)
        else:
            membership = closed_consistent_at_depth(self.closed, w.take(depth).symbols, depth)
        return membership is Membership.CONSISTENT

    def members(self, count: int) -> List[Name]:
        space = self.closed.space
        if space.kind is SpaceKind.NAT:
            values = remaining_naturals(self.closed, SCAN_DEPTH, SCAN_DEPTH)
            return [constant_name(n) for n in values[:count]]
        if space.kind in (SpaceKind.CANTOR, SpaceKind.BAIRE):
            strategies = ("leftmost", "heaviest", "heaviest-right")
            oracles = [cantor_choice_oracle(space, strategy) for strategy in strategies]
        else:
            oracles = [interval_choice_oracle(space, side) for side in ("left", "right")]
        return _solutions(oracles, self.closed.name, count)

    def describe(self) -> str:
        return self.closed.describe()


def _solutions(oracles: Sequence[Oracle], x: Name, count: int) -> List[Name]:
    found: List[Name] = []
    for oracle in islice(oracles, count):
        try:
            found.append(oracle(x, SCAN_DEPTH))
        except AdviceKitError as exc:
            logger.debug("no member from %s: %s", getattr(oracle, "__name__", oracle), exc)
    return found


@dataclass(slots=True, frozen=True)
class SolutionSet(AdviceSet):
    """Correct answers of ``problem`` on ``x``; advice handed straight through to the output."""

    problem: MultiProblem
    x: Name
    precision: int = SCAN_DEPTH

    def contains(self, w: Name, depth: int) -> bool:
        return self.problem.verify(self.x, w.take(depth), depth) is Verdict.CONSISTENT

    def members(self, count: int) -> List[Name]:
        oracles = [self.problem.oracle(v) for v in self.problem.oracle_variants()]
        found: List[Name] = []
        for oracle in oracles[:count]:
            try:
                found.append(oracle(self.x, self.precision))
            except AdviceKitError as exc:
                logger.debug("oracle found no solution: %s", exc)
        return found

    def describe(self) -> str:
        return f"{self.problem.problem_id}({self.x.describe()})"


@dataclass(slots=True, frozen=True)
class ProductSet(AdviceSet):
    left: AdviceSet
    right: AdviceSet

    def contains(self, w: Name, depth: int) -> bool:
        a, b = unpair_name(w)
        return self.left.contains(a, depth) and self.right.contains(b, depth)

    def members(self, count: int) -> List[Name]:
        pairs = [pair_names(a, b) for a in self.left.members(count) for b in self.right.members(count)]
        return pairs[:count]

    def describe(self) -> str:
        return f"{self.left.describe()} x {self.right.describe()}"


@dataclass(slots=True, frozen=True)
class TaggedSet(AdviceSet):
    """``{tag} x inner`` inside a coproduct of advice spaces."""

    tag: int
    inner: AdviceSet

    def contains(self, w: Name, depth: int) -> bool:
        return w.symbol(0) == self.tag and self.inner.contains(drop_name(w, 1), depth)

    def members(self, count: int) -> List[Name]:
        return [prepend_name([self.tag], m) for m in self.inner.members(count)]

    def describe(self) -> str:
        return f"{self.tag}:{self.inner.describe()}"


@dataclass(slots=True, frozen=True)
class CompositionSet(AdviceSet):
    """Union over ``y`` in ``inner`` of ``outer(y) x {y}``; advice names are ``<z, y>``.

    Example:
        >>> from advice_kit.spaces.descriptors import finite_space
        >>> two = finite_space(2)
        >>> joined = CompositionSet(DiscreteSet(two, (0, 1)), lambda y: DiscreteSet(two, (y.symbol(0),)))
        >>> [joined.contains(pair_names(constant_name(z), constant_name(y)), 4) for z, y in [(1, 1), (0, 1)]]
        [True, False]
    """

    inner: AdviceSet
    outer: Callable[[Name], AdviceSet]

    def contains(self, w: Name, depth: int) -> bool:
        z, y = unpair_name(w)
        return self.inner.contains(y, depth) and self.outer(y).contains(z, depth)

    def members(self, count: int) -> List[Name]:
        found: List[Name] = []
        for y in self.inner.members(count):
            found.extend(pair_names(z, y) for z in self.outer(y).members(count))
        return found[:count]

    def describe(self) -> str:
        return f"compose({self.inner.describe()})"


@dataclass(slots=True, frozen=True)
class PullbackSet(AdviceSet):
    """Subset of ``iota``'s preimage of ``target``.

    ``lift`` maps a member of ``target`` to one of its preimages.
    """

    target: AdviceSet
    iota: PrefixMachine
    lift: Callable[[Name], Name]
    fuel: int = 10**5

    def contains(self, w: Name, depth: int) -> bool:
        try:
            return self.target.contains(self.iota.on(w, self.fuel), depth)
        except FuelExhausted:
            return False

    def members(self, count: int) -> List[Name]:
        return [self.lift(m) for m in self.target.members(count)]

    def describe(self) -> str:
        return f"{self.iota.machine_id}^-1({self.target.describe()})"
