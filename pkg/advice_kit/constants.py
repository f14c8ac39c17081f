"""Shared constants and environment flags.

Integer overrides such as ``ADVICE_KIT_FUEL`` are read by
:meth:`advice_kit.settings.RunSettings.from_env`, not here, so a bad value
surfaces as a ``ConfigError`` at the run boundary instead of at import.
"""

from __future__ import annotations

import os

DEFAULT_FUEL = 10**6
DEBUG = os.getenv("ADVICE_KIT_DEBUG", "0") not in {
    "",
    "0",
    "false",
    "False",
}
TAU_FUEL_CAP = 10**8
DEFAULT_DEPTH = 48
ORACLE_PRECISION = 96
SCAN_DEPTH = 512
PADDED_DELAY_SHIFT = 4
VERSION = "0.1.0"
