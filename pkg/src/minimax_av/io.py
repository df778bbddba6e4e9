"""Ballot file parsing/rendering and seeded instance generation.

File format: an optional run of '#' comment lines, a header "n m k",
then n rows of m characters from {0,1}. Comments may appear anywhere.
"""

from __future__ import annotations

import random

from .bitvec import BitVector
from .core import Election
from .errors import BallotParseError


def parse_election(text: str) -> Election:
    """Parse a ballot file. Raises BallotParseError with the offending line number."""
    header = None
    ballots: list[BitVector] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 3:
                raise BallotParseError(f"header must be 'n m k', got {line!r}", lineno)
            try:
                n, m, k = (int(p) for p in parts)
            except ValueError:
                raise BallotParseError(f"non-integer header field in {line!r}", lineno) from None
            if n < 1:
                raise BallotParseError(f"n={n} must be at least 1", lineno)
            if m < 0:
                raise BallotParseError(f"m={m} must be nonnegative", lineno)
            if not 0 <= k <= m:
                raise BallotParseError(f"k={k} out of range [0, {m}]", lineno)
            header = (n, m, k)
            continue
        n, m, k = header
        if len(ballots) == n:
            raise BallotParseError(f"extra ballot line beyond the declared n={n}", lineno)
        if len(line) != m:
            raise BallotParseError(f"ballot has length {len(line)}, expected {m}", lineno)
        try:
            ballots.append(BitVector.from_string(line))
        except ValueError as exc:
            raise BallotParseError(str(exc), lineno) from None
    if header is None:
        raise BallotParseError("missing header line")
    n, m, k = header
    if len(ballots) != n:
        raise BallotParseError(f"found {len(ballots)} ballots, header declares n={n}")
    return Election(tuple(ballots), m, k)


def render_election(election: Election) -> str:
    rows = "\n".join(b.to01() for b in election.ballots)
    return f"{election.n} {election.m} {election.k}\n{rows}\n"


def generate_instance(
    n: int, m: int, k: int, radius: int, seed: int
) -> tuple[Election, BitVector]:
    """Plant a size-k committee and sample n ballots at Hamming distance exactly
    ``radius`` from it, so OPT <= radius by construction."""
    if not 0 <= k <= m:
        raise ValueError(f"k={k} out of range [0, {m}]")
    if not 0 <= radius <= m:
        raise ValueError(f"radius={radius} out of range [0, {m}]")
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    planted = BitVector.from_ones(rng.sample(range(m), k), m)
    ballots = []
    for _ in range(n):
        flips = 0
        for j in rng.sample(range(m), radius):
            flips |= 1 << j
        ballots.append(BitVector(planted.value ^ flips, m))
    return Election(tuple(ballots), m, k), planted
