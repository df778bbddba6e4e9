"""Minimax Approval Voting solvers: exact oracle, baselines, and a PTAS."""

from .bitvec import (
    BitVector,
    Pattern,
    Permutation,
    apply_permutation,
    hamming,
    k_completion,
    pattern,
    star_permutation,
)
from .core import Committee, Election, minisum_committee, objective, three_approx
from .errors import BallotParseError, BudgetExceededError, SimplexError
from .io import generate_instance, parse_election, render_election
from .oracle import OracleResult, exact_opt
from .ptas import PtasParams, SolveReport, derive_params, ptas_solve

__all__ = [
    "BitVector",
    "Pattern",
    "Permutation",
    "apply_permutation",
    "hamming",
    "k_completion",
    "pattern",
    "star_permutation",
    "Committee",
    "Election",
    "minisum_committee",
    "objective",
    "three_approx",
    "BallotParseError",
    "BudgetExceededError",
    "SimplexError",
    "generate_instance",
    "parse_election",
    "render_election",
    "OracleResult",
    "exact_opt",
    "PtasParams",
    "SolveReport",
    "derive_params",
    "ptas_solve",
]
