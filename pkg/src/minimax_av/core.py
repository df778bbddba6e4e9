"""Elections, committees, the minimax objective and the two simple baselines."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bitvec import BitVector, hamming, k_completion


@dataclass(frozen=True)
class Election:
    """A multiset of approval ballots over m candidates with committee size k."""

    ballots: tuple[BitVector, ...]
    m: int
    k: int

    def __post_init__(self):
        if not self.ballots:
            raise ValueError("an election needs at least one ballot")
        if not 0 <= self.k <= self.m:
            raise ValueError(f"k={self.k} out of range [0, {self.m}]")
        for i, b in enumerate(self.ballots):
            if b.length != self.m:
                raise ValueError(f"ballot {i} has length {b.length}, expected {self.m}")

    @property
    def n(self) -> int:
        return len(self.ballots)

    def normalized(self) -> "Election":
        """Ensure n > k by replicating the first ballot; the minimax objective is unchanged."""
        if self.n > self.k:
            return self
        pad = (self.ballots[0],) * (self.k - self.n + 1)
        return Election(self.ballots + pad, self.m, self.k)


@dataclass(frozen=True)
class Committee:
    """An elected candidate set, encoded as a 0/1 vector with exactly k ones."""

    vector: BitVector


def election_from_strings(rows: Sequence[str], k: int) -> Election:
    ballots = tuple(BitVector.from_string(r) for r in rows)
    return Election(ballots, ballots[0].length, k)


def max_distance(x: BitVector, ballots: Sequence[BitVector]) -> int:
    if not ballots:
        raise ValueError("no ballots")
    xv = x.value
    return max((xv ^ b.value).bit_count() for b in ballots)


def objective(c: Committee, election: Election) -> int:
    """Maximum Hamming distance from the committee to any ballot."""
    if c.vector.length != election.m:
        raise ValueError("committee length does not match the election")
    return max_distance(c.vector, election.ballots)


def minisum_committee(election: Election) -> Committee:
    """The k most-approved candidates (ties to the smaller index).

    This minimizes the *sum* of Hamming distances over all size-k committees.
    """
    counts = [0] * election.m
    for b in election.ballots:
        v = b.value
        while v:
            low = v & -v
            counts[low.bit_length() - 1] += 1
            v ^= low
    chosen = sorted(range(election.m), key=lambda j: (-counts[j], j))[: election.k]
    return Committee(BitVector.from_ones(chosen, election.m))


def three_approx(election: Election) -> Committee:
    """Best k-completion over all ballots; guarantees objective <= 3 * OPT.

    Ties between equal-objective completions go to the lexicographically
    smallest bit string.
    """
    best: tuple[int, str] | None = None
    best_vec: BitVector | None = None
    seen: set[int] = set()
    for b in election.ballots:
        cand = k_completion(b, election.k)
        if cand.value in seen:
            continue
        seen.add(cand.value)
        key = (max_distance(cand, election.ballots), cand.to01())
        if best is None or key < best:
            best = key
            best_vec = cand
    assert best_vec is not None
    return Committee(best_vec)
