"""PTAS for Minimax Approval Voting.

The solver enumerates fixed-size vote subsets, fixes the committee on the
positions where the subset agrees (after repairing the ones-count with a
k''-completion), and optimizes the remaining "star" positions either
exhaustively or through LP rounding, keeping the best evaluated committee.
"""

from __future__ import annotations

import hashlib
import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .bitvec import (
    BitVector,
    Permutation,
    apply_permutation,
    bits_to01,
    k_completion,
    pattern,
    star_permutation,
)
from .core import Committee, Election, max_distance
from .errors import BudgetExceededError
from .lp import INFEASIBLE, build_aux_lp, solve_lp

DEFAULT_TRIALS = 64
DEFAULT_CASE1_MAX_BETA = 24
DEFAULT_CASE2_MAX_CASES = 1 << 24

CASE_EXHAUSTIVE_BETA = "exhaustive_beta"
CASE_EXHAUSTIVE_K = "exhaustive_k"
CASE_LP_ROUNDING = "lp_rounding"


@dataclass(frozen=True)
class PtasParams:
    """Derived parameters: epsilon0 = epsilon/3, R = ceil(2/epsilon0), epsilon2 = epsilon0/2."""

    epsilon: float
    epsilon0: float
    R: int
    epsilon2: float
    trials: int
    seed: int

    def case1_threshold(self, n: int) -> float:
        return 3.0 * self.R * math.log(3.0 * n) / self.epsilon2**2

    @property
    def case2_threshold(self) -> float:
        return 3.0 * self.R**2 * math.log(6.0) / self.epsilon2**2


def derive_params(epsilon: float, seed: int = 0, trials: int = DEFAULT_TRIALS) -> PtasParams:
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    # R is computed over rationals so that e.g. epsilon=0.6 yields exactly R=10.
    eps_frac = Fraction(epsilon).limit_denominator(10**6)
    R = math.ceil(Fraction(6) / eps_frac)
    epsilon0 = epsilon / 3.0
    epsilon2 = epsilon0 / 2.0
    if not 0.0 < epsilon2 < 0.5:
        raise ValueError(f"epsilon2={epsilon2} outside (0, 1/2)")
    return PtasParams(epsilon, epsilon0, R, epsilon2, trials, seed)


@dataclass(frozen=True)
class Skip:
    """A (Y, k') pair the main loop cannot use; carries the reason for diagnostics."""

    reason: str


@dataclass(frozen=True)
class AuxProblem:
    """Star-part optimization instance for one (vote subset, k') pair.

    All ballots are given in the permuted candidate order and split into
    their star part (length beta) and no-star part. ``offsets`` are the
    fixed no-star distances d(s_alg_nostar, ballot'').
    """

    subset: tuple[int, ...]
    perm: Permutation
    beta: int
    star_ballots: tuple[BitVector, ...]
    nostar_ballots: tuple[BitVector, ...]
    k_prime: int
    k_dprime: int
    s_alg_nostar: BitVector
    offsets: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.star_ballots)


@dataclass(frozen=True)
class AuxSolution:
    s_prime: BitVector
    q: int
    case_used: str


def build_aux(election: Election, subset: Sequence[int], k_prime: int) -> AuxProblem | Skip:
    """Build the star-part problem for a vote subset and a split k = k' + k''."""
    if not subset:
        raise ValueError("subset must be nonempty")
    if not 0 <= k_prime <= election.k:
        raise ValueError(f"k'={k_prime} out of range [0, {election.k}]")
    votes = [election.ballots[i] for i in subset]
    perm, sorted_pattern = star_permutation(pattern(votes))
    beta = sorted_pattern.star_count
    k_dprime = election.k - k_prime
    if k_dprime > election.m - beta:
        return Skip("k'' exceeds no-star length")
    if k_prime > beta:
        return Skip("k' exceeds star count")
    nostar_pattern = BitVector.from_string(sorted_pattern.symbols[beta:])
    s_alg_nostar = k_completion(nostar_pattern, k_dprime)
    star_ballots = []
    nostar_ballots = []
    offsets = []
    for b in election.ballots:
        star, nostar = apply_permutation(b, perm).split(beta)
        star_ballots.append(star)
        nostar_ballots.append(nostar)
        offsets.append((s_alg_nostar.value ^ nostar.value).bit_count())
    return AuxProblem(
        subset=tuple(subset),
        perm=perm,
        beta=beta,
        star_ballots=tuple(star_ballots),
        nostar_ballots=tuple(nostar_ballots),
        k_prime=k_prime,
        k_dprime=k_dprime,
        s_alg_nostar=s_alg_nostar,
        offsets=tuple(offsets),
    )


def _aux_q(aux: AuxProblem, mask: int) -> int:
    return max(
        (mask ^ sb.value).bit_count() + off for sb, off in zip(aux.star_ballots, aux.offsets)
    )


def _best_of_masks(aux: AuxProblem, masks, case_used: str) -> AuxSolution:
    best_q: Optional[int] = None
    best_mask = 0
    best_str = ""
    for mask in masks:
        q = _aux_q(aux, mask)
        if best_q is None or q < best_q:
            best_q, best_mask, best_str = q, mask, bits_to01(mask, aux.beta)
        elif q == best_q:
            s = bits_to01(mask, aux.beta)
            if s < best_str:
                best_mask, best_str = mask, s
    if best_q is None:
        raise ValueError(f"no feasible star assignment: k'={aux.k_prime}, beta={aux.beta}")
    return AuxSolution(BitVector(best_mask, aux.beta), best_q, case_used)


def solve_aux_case1(aux: AuxProblem, max_beta: int = DEFAULT_CASE1_MAX_BETA) -> AuxSolution:
    """Exact optimum by scanning all 2^beta star assignments."""
    if aux.beta > max_beta:
        raise BudgetExceededError(f"2^{aux.beta} assignments exceed the case-1 budget")
    kp = aux.k_prime
    masks = (m for m in range(1 << aux.beta) if m.bit_count() == kp)
    return _best_of_masks(aux, masks, CASE_EXHAUSTIVE_BETA)


def solve_aux_case2(aux: AuxProblem, max_cases: int = DEFAULT_CASE2_MAX_CASES) -> AuxSolution:
    """Exact optimum by placing k' ones among the beta star positions."""
    if aux.k_prime > aux.beta:
        raise ValueError(f"k'={aux.k_prime} exceeds beta={aux.beta}")
    if math.comb(aux.beta, aux.k_prime) > max_cases:
        raise BudgetExceededError(
            f"C({aux.beta}, {aux.k_prime}) placements exceed the case-2 budget"
        )
    masks = (
        sum(1 << j for j in ones) for ones in itertools.combinations(range(aux.beta), aux.k_prime)
    )
    return _best_of_masks(aux, masks, CASE_EXHAUSTIVE_K)


def _repair_to_k_prime(aux: AuxProblem, mask: int) -> int:
    """Deterministic minimal repair of a rounded mask to exactly k' ones.

    Like a k'-completion it only adds or only deletes ones, but each step
    flips the position that minimizes the achieved q (ties to the smallest
    index); the smallest-index rule can repair away from every good
    solution when the LP pins a wrong position to 1.
    """
    surplus = mask.bit_count() - aux.k_prime
    step = -1 if surplus > 0 else 1
    for _ in range(abs(surplus)):
        candidates = (
            mask ^ (1 << j)
            for j in range(aux.beta)
            if ((mask >> j) & 1) == (1 if step < 0 else 0)
        )
        mask = min(candidates, key=lambda c: (_aux_q(aux, c), bits_to01(c, aux.beta)))
    return mask


def _trial_rng(seed: int, subset_index: int, k_prime: int, trial: int) -> random.Random:
    # Stable across processes and platforms, unlike hash().
    key = f"{seed}:{subset_index}:{k_prime}:{trial}".encode()
    return random.Random(int.from_bytes(hashlib.sha256(key).digest()[:8], "big"))


def solve_aux_case3(
    aux: AuxProblem,
    params: PtasParams,
    subset_index: int = 0,
    trials: int | None = None,
    use_fallback: bool = True,
) -> AuxSolution | Skip:
    """LP relaxation plus seeded randomized rounding repaired to k' ones.

    Runs ``trials`` independent Bernoulli roundings of the fractional
    solution, each minimally repaired to exactly k' ones, plus (optionally)
    one deterministic trial that sets the k' largest fractional positions,
    and keeps the best.
    """
    if aux.k_prime > aux.beta:
        return Skip("lp infeasible")
    outcome = solve_lp(build_aux_lp(aux))
    if outcome.status == INFEASIBLE:
        return Skip("lp infeasible")
    assert outcome.solution is not None
    frac = outcome.solution[: aux.beta]
    if trials is None:
        trials = params.trials

    masks = []
    for t in range(trials):
        rng = _trial_rng(params.seed, subset_index, aux.k_prime, t)
        raw = sum(1 << j for j in range(aux.beta) if rng.random() < frac[j])
        masks.append(_repair_to_k_prime(aux, raw))
    if use_fallback:
        top = sorted(range(aux.beta), key=lambda j: (-frac[j], j))[: aux.k_prime]
        masks.append(sum(1 << j for j in top))
    return _best_of_masks(aux, masks, CASE_LP_ROUNDING)


def solve_aux(
    aux: AuxProblem,
    params: PtasParams,
    subset_index: int = 0,
    force_case: int | None = None,
) -> AuxSolution | Skip:
    """Dispatch to the exhaustive or LP-rounding solver by the size thresholds."""
    n = aux.n
    if force_case is not None:
        case = force_case
    elif aux.beta <= params.case1_threshold(n):
        case = 1
    elif aux.k_prime <= params.case2_threshold:
        case = 2
    else:
        case = 3
    if case == 1:
        return solve_aux_case1(aux)
    if case == 2:
        return solve_aux_case2(aux)
    if case == 3:
        return solve_aux_case3(aux, params, subset_index=subset_index)
    raise ValueError(f"unknown case {force_case}")


@dataclass(frozen=True)
class SolveReport:
    committee: Committee
    objective: int
    params: PtasParams
    diagnostics: dict = field(compare=False)


def _process_subsets(
    election: Election,
    params: PtasParams,
    tasks: Sequence[tuple[int, tuple[int, ...]]],
    force_case: int | None,
) -> tuple[Optional[tuple[int, str, int]], dict, dict]:
    """Best (objective, committee string, committee value) over the given subsets."""
    best: Optional[tuple[int, str, int]] = None
    skips: dict[str, int] = {}
    cases: dict[str, int] = {}
    for subset_index, subset in tasks:
        for k_prime in range(election.k + 1):
            aux = build_aux(election, subset, k_prime)
            if isinstance(aux, Skip):
                skips[aux.reason] = skips.get(aux.reason, 0) + 1
                continue
            sol = solve_aux(aux, params, subset_index=subset_index, force_case=force_case)
            if isinstance(sol, Skip):
                skips[sol.reason] = skips.get(sol.reason, 0) + 1
                continue
            cases[sol.case_used] = cases.get(sol.case_used, 0) + 1
            permuted = sol.s_prime.concat(aux.s_alg_nostar)
            full = apply_permutation(permuted, aux.perm.inverted())
            key = (max_distance(full, election.ballots), full.to01(), full.value)
            if best is None or key < best:
                best = key
    return best, skips, cases


def ptas_solve(
    election: Election,
    epsilon: float,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
    force_case: int | None = None,
    workers: int = 1,
) -> SolveReport:
    """(1+epsilon)-approximation for the minimax committee.

    Deterministic for fixed (election, epsilon, seed), including with
    ``workers > 1``: per-trial randomness is derived from
    (seed, subset index, k', trial index) only.
    """
    start = time.perf_counter()
    norm = election.normalized()
    params = derive_params(epsilon, seed=seed, trials=trials)
    size = min(params.R, norm.n)
    subsets = list(enumerate(itertools.combinations(range(norm.n), size)))

    if workers > 1 and len(subsets) > 1:
        chunks = [subsets[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(
                    _process_subsets,
                    itertools.repeat(norm),
                    itertools.repeat(params),
                    chunks,
                    itertools.repeat(force_case),
                )
            )
    else:
        results = [_process_subsets(norm, params, subsets, force_case)]

    best: Optional[tuple[int, str, int]] = None
    skips: dict[str, int] = {}
    cases: dict[str, int] = {}
    for part_best, part_skips, part_cases in results:
        if part_best is not None and (best is None or part_best < best):
            best = part_best
        for reason, c in part_skips.items():
            skips[reason] = skips.get(reason, 0) + c
        for name, c in part_cases.items():
            cases[name] = cases.get(name, 0) + c
    if best is None:
        # Cannot happen for a valid election: k' = ones in the star part of
        # any ballot's k-completion is always buildable for some split.
        raise RuntimeError("no candidate committee was evaluated")

    objective, _, value = best
    committee = Committee(BitVector(value, norm.m))
    diagnostics = {
        "subsets_examined": len(subsets),
        "pairs_examined": len(subsets) * (norm.k + 1),
        "skips": dict(sorted(skips.items())),
        "cases": dict(sorted(cases.items())),
        "elapsed_ms": (time.perf_counter() - start) * 1000.0,
    }
    return SolveReport(committee, objective, params, diagnostics)
