"""
Multivalued problems with finite-depth verifiers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, List, Mapping, Sequence, Tuple

from ..errors import MalformedName, UnknownCatalogEntry
from ..intervals import Interval
from ..names import Name, Prefix
from ..spaces.descriptors import SpaceDescriptor
from ..spaces.reals import RealReader, exact_value


class Verdict(Enum):
    """Finite-depth verdict on a candidate answer. There is no "accepted"."""

    CONSISTENT = "consistent"
    REFUTED = "refuted"


class DomainStatus(Enum):
    CONSISTENT_SO_FAR = "consistent-so-far"
    VIOLATED = "domain-violated"


Verifier = Callable[[Name, Prefix, int], Verdict]
DomainCheck = Callable[[Name, int], DomainStatus]
Oracle = Callable[[Name, int], Name]


def always_in_domain(x: Name, depth: int) -> DomainStatus:
    return DomainStatus.CONSISTENT_SO_FAR


@dataclass(slots=True, frozen=True)
class MultiProblem:
    """A multivalued problem ``f :⊆ X ⇉ Y`` as the harness sees it.

    Attributes:
        problem_id: Catalog id such as ``LLPO`` or ``SEIGEN_2``.
        input_space: Space of instances.
        output_space: Space of answers.
        verifier: ``(x, candidate, depth) -> Verdict``; REFUTED once the
            candidate contradicts every correct answer visible at ``depth``.
        domain_check: ``(x, depth) -> DomainStatus``.
        oracles: Named solver variants ``(x, precision) -> Name``; the first
            one is the default.
        description: One-line summary for reports.
    """

    problem_id: str
    input_space: SpaceDescriptor
    output_space: SpaceDescriptor
    verifier: Verifier
    domain_check: DomainCheck = always_in_domain
    oracles: Mapping[str, Oracle] = field(default_factory=dict)
    description: str = ""

    def verify(self, x: Name, candidate: Prefix, depth: int) -> Verdict:
        try:
            return self.verifier(x, candidate, depth)
        except MalformedName:
            return Verdict.REFUTED

    def check_domain(self, x: Name, depth: int) -> DomainStatus:
        return self.domain_check(x, depth)

    def oracle_variants(self) -> List[str]:
        return list(self.oracles)

    def oracle(self, variant: str | None = None) -> Oracle:
        """Return the named oracle, or the default one."""

        if not self.oracles:
            raise UnknownCatalogEntry(f"{self.problem_id} ships no oracle")
        key = variant or next(iter(self.oracles))
        try:
            return self.oracles[key]
        except KeyError as exc:
            raise UnknownCatalogEntry(
                f"{self.problem_id} has no oracle {key!r}; variants: {', '.join(self.oracles)}"
            ) from exc

    def solve(self, x: Name, precision: int, variant: str | None = None) -> Name:
        return self.oracle(variant)(x, precision)


def verify_candidate(problem: MultiProblem, x: Name, candidate: Prefix, depth: int) -> Verdict:
    return problem.verify(x, candidate, depth)


def consistent_to_depth(problem: MultiProblem, x: Name, answer: Name, depth: int, stride: int = 8) -> bool:
    """Whether ``answer`` stays CONSISTENT when checked at every ``stride``-th depth up to ``depth``."""

    prefix = answer.take(depth)
    depths = sorted({*range(stride, depth + 1, stride), depth})
    return all(problem.verify(x, prefix.take(d), d) is Verdict.CONSISTENT for d in depths)


def split_prefix(prefix: Prefix, arity: int) -> List[Prefix]:
    """Split an interleaved prefix into its components.

    Example:
        >>> from advice_kit.names import NATURAL
        >>> [p.symbols for p in split_prefix(Prefix(NATURAL, (1, 2, 3, 4, 5)), 2)]
        [(1, 3, 5), (2, 4)]
    """

    return [Prefix(prefix.alphabet, prefix.symbols[j::arity]) for j in range(arity)]


def constant_answer(candidate: Prefix) -> int | None:
    """The answer ``i`` a candidate ``i i i ...`` names, ``None`` while empty.

    Raises MalformedName when the candidate is not constant.
    """

    if not candidate.symbols:
        return None
    first = candidate.symbols[0]
    if any(symbol != first for symbol in candidate.symbols):
        raise MalformedName(f"discrete answers are constant names, got {candidate.render()}")
    return first


def candidate_interval(candidate: Prefix | Sequence[int]) -> Interval | None:
    """Interval named by a real-name candidate, ``None`` while its header is unfinished."""

    reader = RealReader()
    for symbol in candidate:
        reader.feed(symbol)
    if not reader.header_done:
        return None
    return reader.interval()


def description_length(name: Name) -> int | None:
    """Symbols that pin down an eventually periodic name, ``None`` for other names."""

    source = name.periodic
    if source is None:
        return None
    return len(source.prefix) + len(source.period)


def zero_status(name: Name, depth: int) -> bool | None:
    """Decide ``name == 0^ω`` from ``depth`` symbols where possible.

    A visible nonzero symbol answers False. An eventually periodic name whose
    description fits inside ``depth`` symbols is decided outright.
    """

    if any(symbol != 0 for symbol in name.take(depth)):
        return False
    size = description_length(name)
    if size is not None and depth >= size:
        return all(symbol == 0 for symbol in name.take(size))
    return None


def known_real(name: Name, depth: int) -> Fraction | None:
    """Exact value of an eventually periodic real name once ``depth`` covers its description."""

    size = description_length(name)
    if size is None or depth < size:
        return None
    return exact_value(name)


def real_zero_status(name: Name, enclosure: Interval, depth: int) -> bool | None:
    """Decide whether a real is zero: False when the enclosure excludes 0."""

    if enclosure.excludes_zero():
        return False
    value = known_real(name, depth)
    return None if value is None else value == 0


def all_consistent(verdicts: Sequence[Verdict]) -> Verdict:
    return Verdict.REFUTED if Verdict.REFUTED in verdicts else Verdict.CONSISTENT


def any_violated(statuses: Sequence[DomainStatus]) -> DomainStatus:
    if DomainStatus.VIOLATED in statuses:
        return DomainStatus.VIOLATED
    return DomainStatus.CONSISTENT_SO_FAR


def component_intervals(candidate: Prefix, arity: int) -> Tuple[Interval, ...] | None:
    """Decode an interleaved tuple of real candidates; ``None`` until every header is complete."""

    intervals = [candidate_interval(part) for part in split_prefix(candidate, arity)]
    if any(interval is None for interval in intervals):
        return None
    return tuple(i for i in intervals if i is not None)
