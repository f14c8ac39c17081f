"""
Step-counted complexity of Cantor-to-Cantor machines.

``tau(k)`` is the largest number of steps a machine needs, over all inputs,
to emit its first ``k`` symbols. A machine that declares a lookahead bound
only ever sees finitely many relevant prefixes, so its profile can be
computed exactly; for any other machine the profile is a maximum over sample
inputs and so only a lower bound.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterator, List, Sequence, Tuple

from tqdm import tqdm

from .constants import TAU_FUEL_CAP
from .errors import AdviceKitError, FuelExhausted
from .machines.catalog import pi2_machine
from .machines.machine import Diverged, PrefixMachine
from .machines.tapes import StepCounter, StreamTape, Tape
from .measures.sampling import fair_bits
from .names import BINARY, NATURAL, AlphabetKind, Name, Prefix, eventually_periodic, zero_name
from .spaces.sets import encode_entries

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 2**20


class ProfileMode(Enum):
    EXACT = "exact"
    SAMPLED_LOWER_BOUND = "sampled-lower-bound"


class BoundVerdict(Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    INCONCLUSIVE_ACCEPT = "inconclusive-accept"


@dataclass(slots=True, frozen=True)
class ProfilePoint:
    k: int
    max_steps: int
    mode: ProfileMode


@dataclass(slots=True, frozen=True)
class ComplexityProfile:
    """``tau`` at ``k = 1 .. k_max``.

    Attributes:
        machine_id: Profiled machine.
        points: One point per ``k``; ``max_steps`` never decreases.
        inputs_used: What the maximum ranges over.
    """

    machine_id: str
    points: Tuple[ProfilePoint, ...]
    inputs_used: str

    @property
    def mode(self) -> ProfileMode:
        if all(p.mode is ProfileMode.EXACT for p in self.points):
            return ProfileMode.EXACT
        return ProfileMode.SAMPLED_LOWER_BOUND


@dataclass(slots=True, frozen=True)
class BoundCheck:
    verdict: BoundVerdict
    violating_k: int | None = None


def _step_marks(machine: PrefixMachine, x: Name, k_max: int, fuel: int) -> List[int] | Diverged:
    """Step count at each of the first ``k_max`` outputs."""

    counter = StepCounter(fuel)
    marks: List[int] = []
    generator = machine.program(StreamTape(x.stream(), counter))
    try:
        while len(marks) < k_max:
            try:
                next(generator)
            except StopIteration:
                break
            counter.charge()
            marks.append(counter.steps)
    except FuelExhausted:
        logger.debug("%s ran out of fuel after %d outputs", machine.machine_id, len(marks))
        return Diverged(counter.steps, Prefix(machine.output_alphabet, ()))
    finally:
        generator.close()
    if len(marks) < k_max:
        return Diverged(counter.steps, Prefix(machine.output_alphabet, ()))
    return marks


def steps_to_k_bits(machine: PrefixMachine, x: Name, k: int, fuel: int = TAU_FUEL_CAP) -> int | Diverged:
    """Steps spent until ``machine`` has emitted ``k`` symbols on ``x``.

    Example:
        >>> from advice_kit.machines.catalog import identity_machine, pi2_machine
        >>> steps_to_k_bits(identity_machine(), zero_name(), 5), steps_to_k_bits(pi2_machine(), zero_name(), 5)
        (10, 15)
    """

    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return 0
    marks = _step_marks(machine, x, k, fuel)
    if isinstance(marks, Diverged):
        return marks
    return marks[-1]


def exhaustive_inputs(machine: PrefixMachine, k_max: int) -> List[Name]:
    """Every prefix the first ``k_max`` outputs can depend on, padded with zeros."""

    length = machine.declared_lookahead(k_max)
    if length is None:
        raise AdviceKitError(f"{machine.machine_id} declares no lookahead; use sampled inputs")
    alphabet = machine.input_alphabet
    if alphabet.kind is AlphabetKind.NATURAL:
        raise AdviceKitError(f"{machine.machine_id} reads naturals; prefixes cannot be enumerated")
    size = 2 if alphabet.kind is AlphabetKind.BINARY else alphabet.size
    assert size is not None
    if size**length > EXHAUSTIVE_LIMIT:
        raise AdviceKitError(f"{size ** length} prefixes exceed the exhaustive limit {EXHAUSTIVE_LIMIT}")
    return [eventually_periodic(alphabet, list(word), [0]) for word in product(range(size), repeat=length)]


def sample_inputs(count: int = 8, seed: int = 0) -> List[Name]:
    """Constant, alternating and fair-random Cantor names."""

    fixed = [
        zero_name(),
        eventually_periodic(BINARY, [], [1]),
        eventually_periodic(BINARY, [], [0, 1]),
        eventually_periodic(BINARY, [], [1, 1, 0]),
    ]
    return fixed + [fair_bits(seed, trial) for trial in range(count)]


def tau_profile(
    machine: PrefixMachine,
    k_max: int,
    inputs: Sequence[Name] | None = None,
    fuel: int = TAU_FUEL_CAP,
    jobs: int = 1,
    progress: bool = False,
) -> ComplexityProfile:
    """Profile ``machine`` for ``k = 1 .. k_max``.

    Args:
        machine: Machine total on Cantor space.
        k_max: Largest ``k``.
        inputs: Sample names, or None to enumerate every prefix within the
            declared lookahead.
        fuel: Step cap per run.
        jobs: Worker threads, one run per input.
        progress: Show a tqdm bar on stderr.
    Returns:
        Exact points when ``inputs`` is None, sampled lower bounds otherwise.
    Raises:
        AdviceKitError: Exhaustive mode on a machine without a lookahead, or a
            run that did not finish within ``fuel``.

    Example:
        >>> from advice_kit.machines.catalog import identity_machine
        >>> [(p.k, p.max_steps) for p in tau_profile(identity_machine(), 3).points]
        [(1, 2), (2, 4), (3, 6)]
    """

    exact = inputs is None
    names = exhaustive_inputs(machine, k_max) if inputs is None else list(inputs)
    mode = ProfileMode.EXACT if exact else ProfileMode.SAMPLED_LOWER_BOUND
    if not names or k_max < 1:
        return ComplexityProfile(machine.machine_id, (), "none")

    def run(x: Name) -> List[int]:
        marks = _step_marks(machine, x, k_max, fuel)
        if isinstance(marks, Diverged):
            raise AdviceKitError(f"{machine.machine_id} did not emit {k_max} symbols within {fuel} steps on {x.describe()}")
        return marks

    best = [0] * k_max
    bar = tqdm(total=len(names), desc=f"Profiling {machine.machine_id}", unit="input") if progress else None
    try:
        with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
            for marks in pool.map(run, names):
                best = [max(b, s) for b, s in zip(best, marks)]
                if bar is not None:
                    bar.update(1)
    finally:
        if bar is not None:
            bar.close()

    described = f"all {len(names)} prefixes of the lookahead" if exact else f"{len(names)} sample inputs"
    points = tuple(ProfilePoint(k, steps, mode) for k, steps in enumerate(best, start=1))
    return ComplexityProfile(machine.machine_id, points, described)


def poly_bound_check(profile: ComplexityProfile, c: int, d: int) -> BoundCheck:
    """Test ``tau(k) <= c * k**d`` on every recorded point.

    Sampled profiles are lower bounds, so a pass on them is inconclusive.

    Example:
        >>> from advice_kit.machines.catalog import identity_machine
        >>> profile = tau_profile(identity_machine(), 4)
        >>> poly_bound_check(profile, 2, 1).verdict, poly_bound_check(profile, 1, 1)
        (<BoundVerdict.ACCEPT: 'accept'>, BoundCheck(verdict=<BoundVerdict.REJECT: 'reject'>, violating_k=1))
    """

    if c < 1 or d < 0:
        raise ValueError("need c >= 1 and d >= 0")
    for point in profile.points:
        if point.max_steps > c * point.k**d:
            return BoundCheck(BoundVerdict.REJECT, point.k)
    if profile.mode is ProfileMode.EXACT:
        return BoundCheck(BoundVerdict.ACCEPT)
    return BoundCheck(BoundVerdict.INCONCLUSIVE_ACCEPT)


def fnp_witness(machine: PrefixMachine) -> Tuple[PrefixMachine, PrefixMachine]:
    """FNP form of a total machine: ``g`` is the second projection and the advice is ``{f(x)}``.

    The advice map runs ``machine`` and, for every output bit, lists the
    sibling cylinder that the bit rules out; these cylinders cover exactly
    the complement of ``f(x)``.

    Example:
        >>> from advice_kit.machines.catalog import bitflip_machine
        >>> g, advice_map = fnp_witness(bitflip_machine())
        >>> advice_map.step(Prefix(BINARY, (0, 0))).symbols
        (2, 0, 3, 1, 0)
    """

    def program(tape: Tape) -> Iterator[int]:
        seen: List[int] = []
        for bit in machine.program(tape):
            yield from encode_entries([tuple(seen) + (1 - bit,)])
            seen.append(bit)

    advice_map = PrefixMachine(f"singleton[{machine.machine_id}]", program, machine.input_alphabet, NATURAL)
    return pi2_machine(machine.input_alphabet.join(machine.output_alphabet)), advice_map
