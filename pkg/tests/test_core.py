import random

import pytest

from minimax_av.core import (
    Committee,
    Election,
    election_from_strings,
    minisum_committee,
    objective,
    three_approx,
)
from minimax_av.oracle import exact_opt
from helpers import bv, min_sum_bruteforce, random_election


def test_election_validation():
    with pytest.raises(ValueError):
        Election(tuple(), 3, 1)
    with pytest.raises(ValueError):
        Election((bv("101"),), 3, 4)
    with pytest.raises(ValueError):
        Election((bv("101"), bv("10")), 3, 1)


def test_normalization_pads_until_n_exceeds_k():
    e = election_from_strings(["1100"], 3)
    norm = e.normalized()
    assert norm.n == 4
    assert all(b == e.ballots[0] for b in norm.ballots)
    assert election_from_strings(["10", "01", "11"], 1).normalized().n == 3


def test_normalization_preserves_objective():
    rng = random.Random(5)
    for _ in range(30):
        m = rng.randint(2, 8)
        k = rng.randint(1, m)
        n = rng.randint(1, k)  # force padding
        from minimax_av.bitvec import BitVector

        e = Election(tuple(BitVector(rng.getrandbits(m), m) for _ in range(n)), m, k)
        assert exact_opt(e).opt_value == exact_opt(e.normalized()).opt_value


@pytest.mark.parametrize(
    "committee, ballots, expected",
    [
        ("110", ["110", "011"], 2),
        ("101", ["101"], 0),
        ("101010", ["111000", "000111"], 4),
    ],
)
def test_objective_examples(committee, ballots, expected):
    e = election_from_strings(ballots, bv(committee).ones_count())
    assert objective(Committee(bv(committee)), e) == expected


@pytest.mark.parametrize(
    "ballots, k, expected",
    [
        (["110", "101", "100"], 1, "100"),
        (["111"], 3, "111"),
        (["110", "011", "011"], 2, "011"),
    ],
)
def test_minisum_examples(ballots, k, expected):
    assert minisum_committee(election_from_strings(ballots, k)).vector == bv(expected)


def test_minisum_achieves_exhaustive_min_sum():
    rng = random.Random(11)
    for _ in range(100):
        e = random_election(rng, m_range=(2, 10), k_max=10)
        c = minisum_committee(e)
        total = sum((c.vector.value ^ b.value).bit_count() for b in e.ballots)
        assert total == min_sum_bruteforce(e)


def test_three_approx_examples():
    e = election_from_strings(["1100"], 2)
    c = three_approx(e)
    assert c.vector == bv("1100") and objective(c, e) == 0

    # Completions of 1111 and 0000 to k=2 are 0011 and 1100 (smallest-index
    # flips); both reach objective 2 and the lex tie-break picks 0011.
    e = election_from_strings(["1111", "0000"], 2)
    c = three_approx(e)
    assert objective(c, e) == 2
    assert c.vector == bv("0011")


def test_three_approx_ratio_bound_on_random_instances():
    rng = random.Random(23)
    for _ in range(100):
        e = random_election(rng, n_range=(1, 6), m_range=(2, 8))
        opt = exact_opt(e).opt_value
        assert objective(three_approx(e), e) <= 3 * opt
