"""Weihrauch reduction witnesses and the shipped witnesses."""

from .witness import (
    ReductionWitness,
    apply_reduction,
    compose_reductions,
    identity_witness,
    product_reductions,
    solver_for,
    trace_reduction,
)

__all__ = [
    "ReductionWitness",
    "apply_reduction",
    "compose_reductions",
    "identity_witness",
    "product_reductions",
    "solver_for",
    "trace_reduction",
]
