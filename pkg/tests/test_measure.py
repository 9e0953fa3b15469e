from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from oracles import first_rows, gt_patterns_indexed, max_convolution_pairs
from tensor_atoms.core import GTPattern, ValidationError, Weight, patterns_of_shape
from tensor_atoms.lr import CapExceeded
from tensor_atoms.measure import (
    ExactDist,
    RealGTPattern,
    check_identity,
    derive_seed,
    first_row_joint,
    marginal_ak,
    max_convolution,
    nu1_from_lr,
    round_half_down,
    round_real_pattern,
    sample_uniform_pattern,
    sample_uniform_patterns,
)

F = Fraction


# -- ExactDist ------------------------------------------------------------------

def test_exact_dist_validation():
    with pytest.raises(ValidationError):
        ExactDist({1: F(1, 2)})
    with pytest.raises(ValidationError):
        ExactDist({1: F(3, 2), 2: F(-1, 2)})
    d = ExactDist.from_counts({3: 1, 1: 2, 5: 0})
    assert d.support == [1, 3] and d[1] == F(2, 3) and d[5] == 0


def test_exact_dist_max_atom_ties():
    assert ExactDist({2: F(1, 2), 1: F(1, 2)}).max_atom() == (1, F(1, 2))


def test_exact_dist_serialization():
    d = ExactDist({(0, 1): F(1, 3), (1, 1): F(2, 3)})
    assert ExactDist.from_json(d.to_json()) == d
    lines = d.to_csv().splitlines()
    assert lines[0] == "outcome,numerator,denominator,approx"
    assert lines[1].startswith('"0,1",1,3,')
    assert d.pushforward(lambda k: k[1]) == ExactDist.point(1)


# -- sampler -----------------------------------------------------------------------

def test_sampler_constant_shape():
    for seed in range(5):
        p = sample_uniform_pattern((4, 4, 4), seed)
        assert p.rows == ((4, 4, 4), (4, 4), (4,))


def test_sampler_reproducible():
    a = list(sample_uniform_patterns((9, 7, 3), 50, seed=11))
    b = list(sample_uniform_patterns((9, 7, 3), 50, seed=11))
    c = list(sample_uniform_patterns((9, 7, 3), 50, seed=12))
    assert a == b and a != c
    assert a[3] == sample_uniform_pattern((9, 7, 3), derive_seed(11, "pattern", 3))


def test_derive_seed_is_stable():
    # pinned value: first 8 bytes of sha256(repr((0, 'pattern', 0)))
    import hashlib
    expected = int.from_bytes(hashlib.sha256(b"(0, 'pattern', 0)").digest()[:8], "big")
    assert derive_seed(0, "pattern", 0) == expected


def test_sampler_two_point_frequency():
    zeros = sum(p.rows[1][0] == 0 for p in sample_uniform_patterns((1, 0), 20_000, seed=3))
    assert abs(zeros / 20_000 - 0.5) < 0.01


@pytest.mark.parametrize("lam", [(2, 1, 0), (2, 1, -1), (3, 1)])
def test_sampler_chi_square_small(lam):
    pats = list(patterns_of_shape(lam))
    draws = Counter(sample_uniform_patterns(lam, 20_000, seed=5))
    assert set(draws) <= set(pats)
    obs = [draws[p] for p in pats]
    assert stats.chisquare(obs).pvalue > 1e-3


def test_sampler_cap():
    with pytest.raises(CapExceeded):
        sample_uniform_pattern((9, 7, 3), 0, cap=10)


# -- exact first-row laws ----------------------------------------------------------

def test_first_row_joint_examples():
    assert first_row_joint((1, 0, 0)) == ExactDist({(1, 1): F(1, 3), (0, 1): F(1, 3), (0, 0): F(1, 3)})
    assert first_row_joint((5, 0)) == ExactDist({(a,): F(1, 6) for a in range(6)})
    assert first_row_joint((2, 2, 2)) == ExactDist.point((2, 2))


@pytest.mark.parametrize("lam", [(2, 1, 0), (3, 1, -1), (2, 2, 0, 0), (3, 1, 1, 0), (4, 2, 0)])
def test_first_row_joint_matches_enumeration(lam):
    counts = first_rows(lam)
    assert first_row_joint(lam) == ExactDist.from_counts(counts)
    n = len(lam)
    for k in range(1, n):
        marg = Counter()
        for key, c in counts.items():
            marg[key[k - 1]] += c
        assert marginal_ak(lam, k) == ExactDist.from_counts(marg)
    assert marginal_ak(lam, n) == ExactDist.point(lam[0])


def test_marginal_examples():
    assert marginal_ak((1, 0, 0), 2) == ExactDist({0: F(1, 3), 1: F(2, 3)})
    for N in range(1, 8):
        assert marginal_ak((N, 0), 1).max_atom()[1] == F(1, N + 1)
    with pytest.raises(ValidationError):
        marginal_ak((1, 0), 3)


def test_max_convolution_examples():
    assert max_convolution((1, 0, 0), (1, 0, 0)) == ExactDist({2: F(2, 3), 1: F(1, 3)})
    assert max_convolution((4,), (-2,)) == ExactDist.point(2)
    assert max_convolution((2, 2, 2), (3, 1, 0)) == nu1_from_lr((2, 2, 2), (3, 1, 0))


@pytest.mark.parametrize("lam,mu", [((2, 1, 0), (1, 1, 0)), ((3, 0, -1), (2, 2, 0)), ((2, 0), (3, 1))])
def test_max_convolution_matches_pair_enumeration(lam, mu):
    assert max_convolution(lam, mu).masses == max_convolution_pairs(lam, mu)


def test_nu1_examples():
    assert nu1_from_lr((1, 0, 0), (1, 0, 0)) == ExactDist({2: F(2, 3), 1: F(1, 3)})
    assert nu1_from_lr((3, 1, 0), (0, 0, 0)) == ExactDist.point(3)
    for N in range(5):
        for M in range(5):
            expected = {A: F(2 * A - N - M + 1, (N + 1) * (M + 1)) for A in range(max(N, M), N + M + 1)}
            assert nu1_from_lr((N, 0), (M, 0)).masses == expected


@pytest.mark.parametrize("lam,mu", [((1, 0, 0), (1, 0, 0)), ((2, 1, 0), (1, 1, 0)), ((3, 0, -1), (2, 2, 0))])
def test_identity_examples(lam, mu):
    assert check_identity(lam, mu)


rank_pairs = st.integers(1, 4).flatmap(
    lambda n: st.tuples(
        *[st.lists(st.integers(-2, 3), min_size=n, max_size=n).map(
            lambda xs: tuple(sorted(xs, reverse=True))) for _ in range(2)]
    )
)


@settings(max_examples=60, deadline=None)
@given(rank_pairs)
def test_identity_and_support_bounds(pair):
    lam, mu = pair
    law = max_convolution(lam, mu)
    assert law == nu1_from_lr(lam, mu)
    assert max(law.support) == lam[0] + mu[0]
    assert min(law.support) >= lam[-1] + mu[-1]


def test_rank_mismatch():
    with pytest.raises(ValidationError):
        max_convolution((1, 0), (1, 0, 0))


# -- rounding ------------------------------------------------------------------------

def test_round_half_down():
    assert [round_half_down(x) for x in (0.5, 1.5, -0.5, 0.49, 0.51)] == [0, 1, -1, 0, 1]
    assert round_half_down(F(5, 2)) == 2 and round_half_down(F(-5, 2)) == -3


def test_rounding_examples():
    p = RealGTPattern(((2, 1, 0), (2, 0), (1,)))
    assert round_real_pattern(p) == GTPattern(((2, 1, 0), (2, 0), (1,)))
    assert round_real_pattern(RealGTPattern(((2, 0), (0.7,)))).rows[1] == (1,)
    assert round_real_pattern(RealGTPattern(((1, 0), (0.49,)))).rows[1] == (0,)
    with pytest.raises(ValidationError):
        RealGTPattern(((1, 0), (1.5,)))
    with pytest.raises(ValidationError):
        RealGTPattern(((1.5, 0), (1.0,)))


def rejection_real_pattern(lam, rng):
    n = len(lam)
    while True:
        rows = [tuple(float(x) for x in lam)]
        for m in range(n - 1, 0, -1):
            rows.append(tuple(rng.uniform(lam[-1], lam[0]) for _ in range(m)))
        try:
            return RealGTPattern(tuple(rows))
        except ValidationError:
            continue


@pytest.mark.parametrize("lam", [(2, 0), (2, 1, 0), (3, 1, -1)])
def test_rounding_closure_sample(lam):
    rng = random.Random(1)
    for _ in range(500):
        round_real_pattern(rejection_real_pattern(lam, rng))


@settings(max_examples=200)
@given(st.lists(st.fractions(min_value=0, max_value=4), min_size=3, max_size=3))
def test_rounding_closure_exact_points(xs):
    # half-integers exercise the tie rule
    lam = (4, 2, 0)
    x1, x2, y = xs
    if not (lam[0] >= x1 >= lam[1] >= x2 >= lam[2] and x1 >= y >= x2):
        return
    out = round_real_pattern(RealGTPattern(((4, 2, 0), (x1, x2), (y,))))
    assert out.rows[0] == lam


def test_oracle_sanity():
    assert len(gt_patterns_indexed((2, 1, 0))) == 8
    assert len(list(patterns_of_shape(Weight((9, 7, 3))))) == 60
