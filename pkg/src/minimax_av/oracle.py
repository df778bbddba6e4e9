"""Exact brute-force solver and the inaccuracy machinery used to test it.

Everything here favors simplicity over speed: this module is the ground
truth the approximation algorithms are checked against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .bitvec import BitVector, bits_to01, hamming
from .core import Committee, Election
from .errors import BudgetExceededError
from .ptas import AuxProblem

DEFAULT_MAX_M = 20


@dataclass(frozen=True)
class OracleResult:
    committee: Committee
    opt_value: int


def exact_opt(election: Election, max_m: int = DEFAULT_MAX_M) -> OracleResult:
    """Minimize the maximum Hamming distance over all C(m, k) committees.

    Ties go to the lexicographically smallest bit string. Refuses (never
    silently approximates) when m exceeds the enumeration budget.
    """
    if election.m > max_m:
        raise BudgetExceededError(
            f"m={election.m} exceeds the oracle enumeration budget of {max_m}"
        )
    ballots = [b.value for b in election.ballots]
    best: Optional[tuple[int, str, int]] = None
    for ones in itertools.combinations(range(election.m), election.k):
        value = 0
        for j in ones:
            value |= 1 << j
        obj = max((value ^ b).bit_count() for b in ballots)
        if best is None or obj < best[0]:
            best = (obj, bits_to01(value, election.m), value)
        elif obj == best[0]:
            s = bits_to01(value, election.m)
            if s < best[1]:
                best = (obj, s, value)
    assert best is not None
    obj, _, value = best
    return OracleResult(Committee(BitVector(value, election.m)), obj)


def t_vector(votes: Iterable[BitVector], s_opt: BitVector) -> BitVector:
    """s_opt overwritten at every position where the votes are unanimous."""
    votes = list(votes)
    if not votes:
        raise ValueError("t of an empty vote set is undefined")
    m = s_opt.length
    if any(v.length != m for v in votes):
        raise ValueError("votes and s_opt have mixed lengths")
    and_all = votes[0].value
    or_all = votes[0].value
    for v in votes[1:]:
        and_all &= v.value
        or_all |= v.value
    full = (1 << m) - 1
    unanimous = (full & ~or_all) | and_all
    return BitVector((s_opt.value & ~unanimous) | and_all, m)


def ina(votes: Iterable[BitVector], s_opt: BitVector, opt_value: int) -> int:
    """Inaccuracy of a vote subset: d(t(Y), s_opt), extended to 2*OPT for Y empty."""
    votes = list(votes)
    if not votes:
        return 2 * opt_value
    return hamming(t_vector(votes, s_opt), s_opt)


def find_stable_subset(
    election: Election, R: int, s_opt: BitVector, opt_value: int
) -> tuple[int, ...]:
    """Ballot indices of a subset X, |X| = min(R, n), whose inaccuracy is stable:
    adding any single vote drops ina by at most opt_value / R.

    Greedily extends a chain by the vote with the largest inaccuracy drop
    (ties to the smallest ballot index), stops at the minimizing step and
    pads with the smallest unused indices.
    """
    if R < 1:
        raise ValueError("R must be at least 1")
    n = election.n
    if R >= n:
        return tuple(range(n))

    chain = [0]
    ina_values = [ina([election.ballots[0]], s_opt, opt_value)]
    while len(chain) < R + 1:
        current = ina_values[-1]
        best_drop = None
        best_idx = None
        for i in range(n):
            if i in chain:
                continue
            drop = current - ina(
                [election.ballots[j] for j in chain] + [election.ballots[i]], s_opt, opt_value
            )
            if best_drop is None or drop > best_drop:
                best_drop, best_idx = drop, i
        chain.append(best_idx)
        ina_values.append(current - best_drop)

    # r_low minimizes the drop ina(S_r) - ina(S_{r+1}) over r in 1..R.
    drops = [ina_values[r - 1] - ina_values[r] for r in range(1, R + 1)]
    r_low = 1 + drops.index(min(drops))
    subset = set(chain[:r_low])
    for i in range(n):
        if len(subset) == R:
            break
        subset.add(i)
    return tuple(sorted(subset))


def aux_ip_bruteforce(
    aux: AuxProblem, max_beta: int = 24
) -> Optional[tuple[BitVector, int]]:
    """Independent exhaustive oracle for the star-part integer program.

    Enumerates all 2^beta assignments as strings in lexicographic order and
    keeps the feasible minimizer. Returns None when k' > beta (infeasible).
    """
    if aux.beta > max_beta:
        raise BudgetExceededError(f"2^{aux.beta} assignments exceed the budget of 2^{max_beta}")
    if aux.k_prime > aux.beta:
        return None
    best: Optional[tuple[int, BitVector]] = None
    for symbols in itertools.product("01", repeat=aux.beta):
        s = BitVector.from_string("".join(symbols))
        if s.ones_count() != aux.k_prime:
            continue
        q = max(
            hamming(s, sb) + off for sb, off in zip(aux.star_ballots, aux.offsets)
        )
        if best is None or q < best[0]:
            best = (q, s)
    assert best is not None
    return best[1], best[0]
