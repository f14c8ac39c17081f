"""Prefix machines, tapes, and wiring."""

from .machine import (
    Diverged,
    PrefixMachine,
    RunResult,
    RunTrace,
    compose_machines,
    run_machine,
    trace_machine,
)

__all__ = [
    "Diverged",
    "PrefixMachine",
    "RunResult",
    "RunTrace",
    "compose_machines",
    "run_machine",
    "trace_machine",
]
