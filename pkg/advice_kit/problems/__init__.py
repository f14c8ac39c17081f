"""Multivalued problems, their verifiers, and test oracles."""

from .base import DomainStatus, MultiProblem, Verdict, consistent_to_depth, verify_candidate
from .catalog import get_problem, sep_solve, solve_lpo_family

__all__ = [
    "DomainStatus",
    "MultiProblem",
    "Verdict",
    "consistent_to_depth",
    "get_problem",
    "sep_solve",
    "solve_lpo_family",
    "verify_candidate",
]
