"""Exception hierarchy for advice-kit.

Running out of fuel is not an error at the public surface: ``run_machine`` and
friends return a ``Diverged`` value instead. ``FuelExhausted`` only travels
between a step counter and the run boundary that converts it.
"""

from __future__ import annotations

from typing import Tuple


class AdviceKitError(Exception):
    """Base class for every error raised by the package."""


class MalformedName(AdviceKitError):
    """A name, prefix, or name literal does not parse."""


class AlphabetMismatch(AdviceKitError):
    """Two names cannot be combined over a common alphabet."""


class ConfigError(AdviceKitError):
    """An ``ADVICE_KIT_*`` environment override is not a valid value."""


class FixtureParseError(AdviceKitError):
    """A fixture file or literal does not follow the fixture grammar."""


class DomainViolated(AdviceKitError):
    """An input breaks the promise of a problem's domain."""


class EigenvectorUndetermined(AdviceKitError):
    """The matrix is (near-)scalar at the current width.

    Attributes:
        candidates: Description of the eigenvector candidates still possible.
    """

    def __init__(self, message: str, candidates: str = "unit-circle") -> None:
        super().__init__(message)
        self.candidates = candidates


class NoConvergence(AdviceKitError):
    """An iterative numeric routine ran out of its sweep or round budget."""


class NoKernel(AdviceKitError):
    """A matrix has full column rank, so no nonzero kernel vector exists."""


class SchemeMismatch(AdviceKitError):
    """An advice scheme does not satisfy a combinator's hypothesis."""


class FactorizationStall(AdviceKitError):
    """A tensor vector could not be split into factors within the precision budget."""


class UnknownCatalogEntry(AdviceKitError):
    """A problem, machine, witness, or oracle id is not in the catalog."""


class FuelExhausted(AdviceKitError):
    """A step counter went past its fuel.

    Attributes:
        steps: Steps consumed when the budget ran out.
        partial: Output symbols emitted before the budget ran out, when known.
    """

    def __init__(self, steps: int, partial: Tuple[int, ...] = ()) -> None:
        super().__init__(f"fuel exhausted after {steps} steps")
        self.steps = steps
        self.partial = partial
