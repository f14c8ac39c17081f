"""Run settings shared by the CLI, the harnesses, and the tests."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .constants import DEFAULT_DEPTH, DEFAULT_FUEL, ORACLE_PRECISION, SCAN_DEPTH
from .errors import ConfigError


@dataclass(slots=True, frozen=True)
class RunSettings:
    """Budgets used when running machines, oracles, and verifiers.

    Attributes:
        fuel: Step budget for a single machine run.
        depth: Output symbols requested and depth handed to verifiers.
        precision: Digits per real component read or produced by oracles.
        scan_depth: Closed-set entries scanned by choice oracles.
        jobs: Worker threads for Monte-Carlo trials and fixture batches.
        seed: Seed for stochastic commands.

    Example:
        >>> settings = RunSettings()
        >>> settings.depth <= settings.scan_depth
        True
    """

    fuel: int = DEFAULT_FUEL
    depth: int = DEFAULT_DEPTH
    precision: int = ORACLE_PRECISION
    scan_depth: int = SCAN_DEPTH
    jobs: int = 1
    seed: int = 0

    def with_overrides(self, **changes: int | None) -> "RunSettings":
        """Return a copy with every non-None keyword applied.

        Args:
            **changes: Field overrides; None values are ignored.
        Returns:
            Updated settings.

        Example:
            >>> RunSettings().with_overrides(depth=8, jobs=None).depth
            8
        """

        applied = {key: value for key, value in changes.items() if value is not None}
        return replace(self, **applied)

    @classmethod
    def from_env(cls) -> "RunSettings":
        """Build settings from ``ADVICE_KIT_*`` environment variables.

        Returns:
            Settings with ``ADVICE_KIT_FUEL``, ``ADVICE_KIT_DEPTH`` and
            ``ADVICE_KIT_JOBS`` applied when present.
        Raises:
            ConfigError: A variable is set to something other than a
                non-negative integer (a positive one for ``ADVICE_KIT_JOBS``).

        Example:
            >>> import os
            >>> os.environ["ADVICE_KIT_FUEL"] = "20_000"
            >>> RunSettings.from_env().fuel
            20000
            >>> del os.environ["ADVICE_KIT_FUEL"]
        """

        return cls().with_overrides(
            fuel=_env_int("ADVICE_KIT_FUEL", minimum=0),
            depth=_env_int("ADVICE_KIT_DEPTH", minimum=0),
            jobs=_env_int("ADVICE_KIT_JOBS", minimum=1),
        )


def _env_int(key: str, minimum: int) -> int | None:
    raw = os.getenv(key, "").strip()
    if not raw:
        return None
    try:
        value = int(raw.replace("_", ""))
    except ValueError:
        raise ConfigError(f"{key}={raw!r} is not an integer") from None
    if value < minimum:
        raise ConfigError(f"{key}={value} is below {minimum}")
    return value
