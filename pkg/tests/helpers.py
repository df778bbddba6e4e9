"""Shared test utilities: random instances, independent oracles, invariant checks."""

from __future__ import annotations

import itertools
import random
from typing import Optional

import numpy as np

from minimax_av.bitvec import (
    BitVector,
    apply_permutation,
    bits_to01,
    hamming,
    k_completion,
    pattern,
    star_permutation,
)
from minimax_av.core import Election
from minimax_av.lp import INFEASIBLE, OPTIMAL, LinearProgram
from minimax_av.oracle import exact_opt, find_stable_subset, ina
from minimax_av.ptas import AuxProblem, Skip, build_aux


def bv(s: str) -> BitVector:
    return BitVector.from_string(s)


def random_election(
    rng: random.Random,
    n_range=(2, 6),
    m_range=(3, 8),
    k_max: int = 5,
) -> Election:
    n = rng.randint(*n_range)
    m = rng.randint(*m_range)
    k = rng.randint(1, min(k_max, m))
    ballots = tuple(BitVector(rng.getrandbits(m), m) for _ in range(n))
    return Election(ballots, m, k)


def exact_opt_second(election: Election) -> tuple[BitVector, int]:
    """Independent second enumeration: scans raw masks instead of index
    combinations, in a different order than the oracle."""
    best: Optional[tuple[int, str, int]] = None
    for mask in range((1 << election.m) - 1, -1, -1):
        if mask.bit_count() != election.k:
            continue
        obj = max((mask ^ b.value).bit_count() for b in election.ballots)
        key = (obj, bits_to01(mask, election.m), mask)
        if best is None or key < best:
            best = key
    assert best is not None
    return BitVector(best[2], election.m), best[0]


def min_sum_bruteforce(election: Election) -> int:
    """Exhaustive minimum sum of Hamming distances over all size-k committees."""
    best = None
    for ones in itertools.combinations(range(election.m), election.k):
        mask = sum(1 << j for j in ones)
        total = sum((mask ^ b.value).bit_count() for b in election.ballots)
        if best is None or total < best:
            best = total
    return best


def random_aux(rng: random.Random, election: Election) -> AuxProblem | Skip:
    """A random (subset, k') aux problem for the given election."""
    size = rng.randint(1, election.n)
    subset = sorted(rng.sample(range(election.n), size))
    k_prime = rng.randint(0, election.k)
    return build_aux(election, subset, k_prime)


def random_feasible_aux(rng: random.Random, **kwargs) -> tuple[Election, AuxProblem]:
    """Rejection-sample until build_aux yields a non-skipped aux problem."""
    while True:
        election = random_election(rng, **kwargs)
        aux = random_aux(rng, election)
        if not isinstance(aux, Skip):
            return election, aux


def aux_q(aux: AuxProblem, s_prime: BitVector) -> int:
    return max(
        hamming(s_prime, sb) + off for sb, off in zip(aux.star_ballots, aux.offsets)
    )


def vertex_enumerate(lp: LinearProgram, tol: float = 1e-7):
    """Brute-force LP oracle: enumerate basic points from active constraint sets.

    Requires all bounds finite (the random test LPs are boxes). Returns
    (status, value) with status in {optimal, infeasible}.
    """
    nv = lp.num_vars
    rows = [np.asarray(r, dtype=float) for r, _ in lp.eq_rows]
    rhs = [b for _, b in lp.eq_rows]
    n_eq = len(rows)
    ineq_rows = []
    ineq_rhs = []
    for r, b in lp.ub_rows:
        ineq_rows.append(np.asarray(r, dtype=float))
        ineq_rhs.append(b)
    for j, (lo, hi) in enumerate(lp.bounds):
        assert hi is not None, "vertex enumeration needs finite boxes"
        e = np.zeros(nv)
        e[j] = 1.0
        ineq_rows.append(-e)
        ineq_rhs.append(-lo)
        ineq_rows.append(e)
        ineq_rhs.append(hi)

    best = None
    need = nv - n_eq
    for active in itertools.combinations(range(len(ineq_rows)), need):
        A = np.array(rows + [ineq_rows[i] for i in active])
        b = np.array(rhs + [ineq_rhs[i] for i in active])
        if A.shape[0] != nv or abs(np.linalg.det(A)) < 1e-10:
            continue
        x = np.linalg.solve(A, b)
        if all(np.dot(r, x) <= b_i + tol for r, b_i in zip(ineq_rows, ineq_rhs)):
            value = float(np.dot(lp.objective, x))
            if best is None or value < best:
                best = value
    if best is None:
        return INFEASIBLE, None
    return OPTIMAL, best


def hybrid_committee(election: Election, subset: tuple[int, ...], s_opt: BitVector) -> BitVector:
    """The hybrid committee of the k''-completion argument: s_opt on the star
    part, the completed pattern on the no-star part, in original candidate order."""
    votes = [election.ballots[i] for i in subset]
    perm, sorted_pattern = star_permutation(pattern(votes))
    beta = sorted_pattern.star_count
    s_opt_perm = apply_permutation(s_opt, perm)
    s_opt_star, s_opt_nostar = s_opt_perm.split(beta)
    k_dprime = s_opt_nostar.ones_count()
    nostar_pattern = BitVector.from_string(sorted_pattern.symbols[beta:])
    z = k_completion(nostar_pattern, k_dprime)
    return apply_permutation(s_opt_star.concat(z), perm.inverted())


def draw_monotone_chain(rng: random.Random, election: Election) -> None:
    """One randomized chain check: ina is bounded by OPT and nonincreasing."""
    res = exact_opt(election)
    s_opt, opt = res.committee.vector, res.opt_value
    order = list(range(election.n))
    rng.shuffle(order)
    values = []
    for end in range(1, election.n + 1):
        votes = [election.ballots[i] for i in order[:end]]
        values.append(ina(votes, s_opt, opt))
    assert values[0] <= opt
    assert all(a >= b for a, b in zip(values, values[1:]))


def draw_supermodularity(rng: random.Random, election: Election) -> None:
    """One randomized draw of Y <= Z <= S, s in S; the marginal drop shrinks."""
    res = exact_opt(election)
    s_opt, opt = res.committee.vector, res.opt_value
    z_idx = rng.sample(range(election.n), rng.randint(0, election.n))
    y_idx = rng.sample(z_idx, rng.randint(0, len(z_idx)))
    s = election.ballots[rng.randrange(election.n)]
    z_votes = [election.ballots[i] for i in z_idx]
    y_votes = [election.ballots[i] for i in y_idx]
    drop_z = ina(z_votes, s_opt, opt) - ina(z_votes + [s], s_opt, opt)
    drop_y = ina(y_votes, s_opt, opt) - ina(y_votes + [s], s_opt, opt)
    assert drop_z <= drop_y


def draw_greedy_stability(rng: random.Random, election: Election) -> None:
    """One draw: the greedy subset satisfies the OPT/R drop bound exactly."""
    res = exact_opt(election)
    s_opt, opt = res.committee.vector, res.opt_value
    R = rng.randint(1, election.n)
    subset = find_stable_subset(election, R, s_opt, opt)
    votes = [election.ballots[i] for i in subset]
    base = ina(votes, s_opt, opt)
    for i in range(election.n):
        if i in subset:
            continue
        drop = base - ina(votes + [election.ballots[i]], s_opt, opt)
        assert drop <= opt / R + 1e-12


def draw_star_count_bound(rng: random.Random, election: Election) -> None:
    """One draw: the star count of a random subset is at most |Y| * OPT."""
    opt = exact_opt(election).opt_value
    size = rng.randint(1, election.n)
    subset = rng.sample(range(election.n), size)
    p = pattern([election.ballots[i] for i in subset])
    assert p.star_count <= size * opt


def draw_completion_bound(rng: random.Random, election: Election) -> None:
    """One draw: the hybrid optimal-star / completed-no-star committee stays
    within (1 + 2/R) * OPT of every ballot."""
    res = exact_opt(election)
    s_opt, opt = res.committee.vector, res.opt_value
    R = rng.randint(1, election.n)
    subset = find_stable_subset(election, R, s_opt, opt)
    hybrid = hybrid_committee(election, subset, s_opt)
    worst = max(hamming(hybrid, b) for b in election.ballots)
    assert worst <= (1 + 2 / R) * opt + 1e-12


def aux_from_star_rows(star_rows, offsets, k_prime) -> AuxProblem:
    """Hand-built aux problem with an empty no-star part."""
    from minimax_av.bitvec import Permutation

    beta = len(star_rows[0])
    return AuxProblem(
        subset=(0,),
        perm=Permutation.identity(beta),
        beta=beta,
        star_ballots=tuple(BitVector.from_string(r) for r in star_rows),
        nostar_ballots=tuple(BitVector.zeros(0) for _ in star_rows),
        k_prime=k_prime,
        k_dprime=0,
        s_alg_nostar=BitVector.zeros(0),
        offsets=tuple(offsets),
    )
