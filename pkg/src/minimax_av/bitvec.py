"""Bit-vector primitives for approval ballots and committees.

A ballot or committee over m candidates is a fixed-length 0/1 string.
Strings are packed into a single Python int (bit j of ``value`` holds
position j, position 0 being the first character), so Hamming distance
is one xor plus a popcount.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True, order=False)
class BitVector:
    """Immutable fixed-length 0/1 string, word-packed."""

    value: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        if self.value < 0 or self.value >> self.length:
            raise ValueError("value has bits set beyond the declared length")

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        value = 0
        for j, ch in enumerate(s):
            if ch == "1":
                value |= 1 << j
            elif ch != "0":
                raise ValueError(f"illegal character {ch!r} in bit string")
        return cls(value, len(s))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        value = 0
        length = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bits must be 0 or 1, got {b!r}")
            value |= b << length
            length += 1
        return cls(value, length)

    @classmethod
    def from_ones(cls, positions: Iterable[int], length: int) -> "BitVector":
        value = 0
        for j in positions:
            value |= 1 << j
        return cls(value, length)

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(0, length)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(f"position {j} out of range for length {self.length}")
        return (self.value >> j) & 1

    def __iter__(self) -> Iterator[int]:
        v = self.value
        for _ in range(self.length):
            yield v & 1
            v >>= 1

    def ones_count(self) -> int:
        return self.value.bit_count()

    def to01(self) -> str:
        return bits_to01(self.value, self.length)

    def __str__(self) -> str:
        return self.to01()

    def concat(self, other: "BitVector") -> "BitVector":
        return BitVector(self.value | (other.value << self.length), self.length + other.length)

    def split(self, at: int) -> tuple["BitVector", "BitVector"]:
        """Split into (first ``at`` positions, remainder)."""
        if not 0 <= at <= self.length:
            raise ValueError(f"split point {at} out of range")
        low = self.value & ((1 << at) - 1)
        return BitVector(low, at), BitVector(self.value >> at, self.length - at)


def bits_to01(value: int, length: int) -> str:
    """Render a packed mask as a 0/1 string (position 0 first)."""
    return format(value, f"0{length}b")[::-1] if length else ""


def hamming(x: BitVector, y: BitVector) -> int:
    """Number of positions where x and y differ."""
    if x.length != y.length:
        raise ValueError(f"length mismatch: {x.length} != {y.length}")
    return (x.value ^ y.value).bit_count()


def k_completion(x: BitVector, k: int) -> BitVector:
    """Nearest vector to x with exactly k ones.

    Ones are only added or only deleted, always at the smallest-index
    positions, so the result is deterministic and
    hamming(result, x) == |ones_count(x) - k|.
    """
    if not 0 <= k <= x.length:
        raise ValueError(f"k={k} out of range [0, {x.length}]")
    surplus = x.ones_count() - k
    v = x.value
    if surplus > 0:
        for _ in range(surplus):
            v &= v - 1  # clears the lowest set bit
    elif surplus < 0:
        missing = -surplus
        j = 0
        while missing:
            if not (v >> j) & 1:
                v |= 1 << j
                missing -= 1
            j += 1
    return BitVector(v, x.length)


@dataclass(frozen=True)
class Pattern:
    """Per-position consensus of a vote set: '0'/'1' where unanimous, '*' otherwise."""

    symbols: str

    def __post_init__(self):
        bad = set(self.symbols) - {"0", "1", "*"}
        if bad:
            raise ValueError(f"illegal pattern symbols: {sorted(bad)}")

    @property
    def star_count(self) -> int:
        return self.symbols.count("*")

    def __len__(self) -> int:
        return len(self.symbols)

    def to_bitvector(self) -> BitVector:
        """Reinterpret a star-free pattern as a bit vector."""
        if "*" in self.symbols:
            raise ValueError("pattern contains stars")
        return BitVector.from_string(self.symbols)

    def __str__(self) -> str:
        return self.symbols


def pattern(votes: Iterable[BitVector]) -> Pattern:
    """Consensus pattern of a nonempty set of equal-length votes."""
    votes = list(votes)
    if not votes:
        raise ValueError("pattern of an empty vote set is undefined")
    m = votes[0].length
    if any(v.length != m for v in votes):
        raise ValueError("votes have mixed lengths")
    and_all = votes[0].value
    or_all = votes[0].value
    for v in votes[1:]:
        and_all &= v.value
        or_all |= v.value
    symbols = []
    for j in range(m):
        if not (or_all >> j) & 1:
            symbols.append("0")
        elif (and_all >> j) & 1:
            symbols.append("1")
        else:
            symbols.append("*")
    return Pattern("".join(symbols))


@dataclass(frozen=True)
class Permutation:
    """Candidate reordering. forward maps old position -> new; inverse maps new -> old."""

    forward: tuple[int, ...]
    inverse: tuple[int, ...]

    def __post_init__(self):
        m = len(self.forward)
        if len(self.inverse) != m or any(self.inverse[self.forward[j]] != j for j in range(m)):
            raise ValueError("forward and inverse are not mutually inverse")

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        idx = tuple(range(m))
        return cls(idx, idx)

    def __len__(self) -> int:
        return len(self.forward)

    def inverted(self) -> "Permutation":
        return Permutation(self.inverse, self.forward)


_GROUP_RANK = {"*": 0, "0": 1, "1": 2}


def star_permutation(p: Pattern) -> tuple[Permutation, Pattern]:
    """Stable reordering putting all '*' positions first, then '0', then '1'.

    The reordered pattern is the lexicographically smallest rearrangement
    of p under the symbol order * < 0 < 1.
    """
    order = sorted(range(len(p.symbols)), key=lambda j: _GROUP_RANK[p.symbols[j]])
    forward = [0] * len(order)
    for new, old in enumerate(order):
        forward[old] = new
    sorted_symbols = "".join(p.symbols[old] for old in order)
    return Permutation(tuple(forward), tuple(order)), Pattern(sorted_symbols)


def apply_permutation(x: BitVector, perm: Permutation) -> BitVector:
    """Move the bit at old position j to perm.forward[j]."""
    if x.length != len(perm):
        raise ValueError(f"length mismatch: vector {x.length}, permutation {len(perm)}")
    value = 0
    v = x.value
    while v:
        low = v & -v
        value |= 1 << perm.forward[low.bit_length() - 1]
        v ^= low
    return BitVector(value, x.length)
