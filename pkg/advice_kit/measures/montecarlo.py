"""
Monte-Carlo success rates for machines with random advice.

Each trial samples advice from the scheme's measure with the trial's own
Philox stream, runs the core and asks the problem's verifier about the
output. Trials are independent, so they may run on a thread pool; results
are collected by trial index and never depend on the worker count.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from statistics import NormalDist
from typing import Tuple

from tqdm import tqdm

from ..advice.machine import AdviceMachine, run_with_advice
from ..constants import DEFAULT_FUEL
from ..errors import SchemeMismatch
from ..machines.machine import Diverged
from ..names import Name
from ..problems.base import Verdict
from ..spaces.descriptors import SpaceKind
from ..spaces.sets import ClosedSetName, cantor_remaining_mass
from .sampling import sample_trial

logger = logging.getLogger(__name__)

CONFIDENCE = 0.99
Z99 = NormalDist().inv_cdf(0.5 + CONFIDENCE / 2)


def wilson_interval(successes: int, trials: int, z: float = Z99) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Example:
        >>> low, high = wilson_interval(50, 100)
        >>> round(low, 3), round(high, 3)
        (0.375, 0.625)
    """

    if trials <= 0:
        raise ValueError("trials must be positive")
    p = successes / trials
    z2 = z * z
    centre = (p + z2 / (2 * trials)) / (1 + z2 / trials)
    half = z * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / (1 + z2 / trials)
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass(slots=True, frozen=True)
class MonteCarloResult:
    successes: int
    trials: int
    seed: int
    wilson99: Tuple[float, float]

    @property
    def point_estimate(self) -> float:
        return self.successes / self.trials

    @property
    def epsilon_lower_bound(self) -> float:
        """Largest ``ε`` the run supports for "the advice set has measure at least ``ε``"."""

        return self.wilson99[0]


def run_trial(am: AdviceMachine, x: Name, trial: int, depth: int, fuel: int, seed: int) -> bool:
    """One trial: sample advice, run the core, verify at ``depth``."""

    assert am.scheme.measure is not None
    advice = sample_trial(am.scheme.measure, seed, trial)
    output = run_with_advice(am, x, advice, depth, fuel)
    if isinstance(output, Diverged):
        return False
    return am.problem.verify(x, output, depth) is Verdict.CONSISTENT


def monte_carlo_success(
    am: AdviceMachine,
    x: Name,
    trials: int,
    depth: int,
    fuel: int = DEFAULT_FUEL,
    seed: int = 0,
    jobs: int = 1,
    progress: bool = False,
) -> MonteCarloResult:
    """Estimate the probability that sampled advice makes ``am`` succeed on ``x``.

    Args:
        am: Machine with a random-advice scheme over a samplable measure.
        x: Instance name.
        trials: Number of independent trials.
        depth: Output symbols produced and checked per trial.
        fuel: Step budget per trial.
        seed: Seed of the per-trial Philox streams.
        jobs: Worker threads.
        progress: Show a tqdm bar on stderr.
    Returns:
        Success count with its Wilson 99% interval.
    Raises:
        SchemeMismatch: The scheme is not random or its measure cannot be sampled.

    Example:
        >>> from advice_kit.advice.catalog import get_advice_machine
        >>> from advice_kit.spaces.literals import parse_set_literal
        >>> pc = get_advice_machine("pc-cantor")
        >>> full = parse_set_literal("closed{}").name
        >>> monte_carlo_success(pc, full, trials=8, depth=8, seed=1).successes
        8
    """

    measure = am.scheme.measure
    if not am.scheme.random or measure is None or not measure.samplable:
        raise SchemeMismatch(f"{am.machine_id} does not take samplable random advice")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    logger.debug("%s: %d trials, seed %d, %d jobs", am.machine_id, trials, seed, jobs)

    outcomes = [False] * trials
    bar = tqdm(total=trials, desc=f"Trials of {am.machine_id}", unit="trial") if progress else None
    try:
        if jobs <= 1:
            for trial in range(trials):
                outcomes[trial] = run_trial(am, x, trial, depth, fuel, seed)
                if bar is not None:
                    bar.update(1)
        else:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                futures = {pool.submit(run_trial, am, x, trial, depth, fuel, seed): trial for trial in range(trials)}
                for future, trial in futures.items():
                    outcomes[trial] = future.result()
                    if bar is not None:
                        bar.update(1)
    finally:
        if bar is not None:
            bar.close()

    successes = sum(outcomes)
    return MonteCarloResult(successes, trials, seed, wilson_interval(successes, trials))


def closed_measure_bounds(s: ClosedSetName, depth: int) -> Tuple[Fraction, Fraction]:
    """Bounds on the uniform measure of a closed subset of Cantor space.

    The upper bound is the mass left after the first ``depth`` complement
    entries; the lower bound is 0.

    Example:
        >>> from advice_kit.spaces.literals import parse_set_literal
        >>> closed_measure_bounds(parse_set_literal("closed{complement: 1}"), 8)
        (Fraction(0, 1), Fraction(1, 2))
    """

    if s.space.kind is not SpaceKind.CANTOR:
        raise SchemeMismatch(f"measure bounds need a subset of Cantor space, not {s.space.label()}")
    return Fraction(0), cantor_remaining_mass((), s.excluded(depth))
