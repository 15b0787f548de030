import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import brute_exact, brute_plank
from plankcount import _kernels
from plankcount.core import (
    CapacityError,
    ExactOverflowError,
    IntWeightVector,
    InvalidInputError,
    WeightVector,
    normalize,
)
from plankcount.engine import (
    EnumConfig,
    count_halfspace,
    count_parallel,
    count_plank_exact,
    count_plank_gray,
    count_plank_naive,
    gray_sequence,
    tally,
)
from plankcount.search import sample_unit_vector


def fields(c):
    return (c.dims, c.inside, c.boundary, c.outside, c.tol)


def random_units(n, count, seed):
    rng = np.random.default_rng([seed, n])
    return [sample_unit_vector(n, rng) for _ in range(count)]


@pytest.mark.parametrize("count", [count_plank_naive, count_plank_gray, count_parallel])
def test_plank_examples(count):
    c = count(normalize([1, 0, 0]))
    assert (c.inside, c.boundary, c.outside) == (0, 8, 0)
    c = count(normalize([1, 1]))
    assert (c.satisfied, c.outside) == (2, 2)
    c = count(normalize([1, 1, 1]))
    assert (c.inside, c.outside) == (6, 2)
    c = count(normalize([0.6, 0.8]))
    assert (c.satisfied, c.outside) == (2, 2)


def test_exact_examples():
    c = count_plank_exact(IntWeightVector((1, 1)))
    assert (c.inside, c.boundary, c.outside, c.tol) == (2, 0, 2, 0.0)
    c = count_plank_exact(IntWeightVector((1, 0, 0)))
    assert c.boundary == 8
    c = count_plank_exact(IntWeightVector((3, 4)))
    assert (c.inside, c.boundary, c.outside) == (2, 0, 2)


def test_halfspace_examples():
    h = count_halfspace(normalize([1, 0, 0]))
    assert (h.strict_interior, h.boundary, h.closed) == (0, 4, 4)
    h = count_halfspace(normalize([1, 1, 0]))
    assert (h.strict_interior, h.boundary, h.closed) == (2, 0, 2)
    h = count_halfspace(normalize([1, 1, 1]))
    assert (h.strict_interior, h.closed) == (1, 1)
    h = count_halfspace(IntWeightVector((0, 2, 0)))
    assert (h.strict_interior, h.boundary) == (0, 4)


def test_parallel_examples():
    u = normalize([1, 1])
    c = count_parallel(u, EnumConfig(chunk_bits=1), workers=2)
    assert (c.satisfied, c.outside) == (2, 2)
    assert fields(c) == fields(count_plank_gray(u))
    b = IntWeightVector((3, 4) + (0,) * 22)
    c = count_parallel(b, EnumConfig(chunk_bits=8), workers=4)
    assert c.satisfied == 2**23


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 11])
def test_against_pure_python_oracle(n):
    for u in random_units(n, 20, seed=1):
        inside, boundary, outside = brute_plank(u.weights, 1e-9)
        for count in (count_plank_naive, count_plank_gray):
            c = count(u)
            assert (c.inside, c.boundary, c.outside) == (inside, boundary, outside)


def test_gray_matches_naive_n16():
    for u in random_units(16, 100, seed=2):
        assert fields(count_plank_gray(u)) == fields(count_plank_naive(u))


def test_chunk_bits_self_consistent_n20():
    for u in random_units(20, 3, seed=3):
        counts = {fields(count_parallel(u, EnumConfig(chunk_bits=cb), workers=3)) for cb in (0, 2, 4, 8)}
        assert len(counts) == 1


def test_reanchor_period_does_not_change_counts():
    for u in random_units(12, 10, seed=4):
        ref = fields(count_plank_gray(u))
        for period in (1, 7, 64, 1 << 20):
            assert fields(count_plank_gray(u, EnumConfig(reanchor_period=period))) == ref


def test_gray_sequence_structure():
    n = 10
    seq = list(gray_sequence(n))
    assert sorted(seq) == list(range(1 << n))
    for t in range(len(seq) - 1):
        diff = seq[t] ^ seq[t + 1]
        assert bin(diff).count("1") == 1
        # flipped bit index = trailing zeros of t + 1
        step = t + 1
        assert diff.bit_length() - 1 == (step & -step).bit_length() - 1


def test_trailing_zero_table():
    tz = _kernels.TRAILING_ZEROS
    for t in list(range(1, 4096)) + [1 << 15, 3 << 14, 65535]:
        assert tz[t] == (t & -t).bit_length() - 1
    # values above the table width fall back to the loop
    for t in (1 << 16, 3 << 20, 1 << 33):
        assert _kernels._ctz(np.int64(t), tz) == (t & -t).bit_length() - 1


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=9).filter(any))
def test_exact_against_rational_oracle(b):
    ref = brute_exact(b)
    bv = IntWeightVector(tuple(b))
    t = tally(bv)
    c, h = t.plank(), t.halfspace()
    assert (c.inside, c.boundary, c.outside) == (ref["inside"], ref["boundary"], ref["outside"])
    assert (h.strict_interior, h.closed) == (ref["strict"], ref["closed"])


def test_exact_float_agree_when_separated():
    rng = np.random.default_rng(5)
    checked = 0
    for _ in range(200):
        b = tuple(int(x) for x in rng.integers(-9, 10, size=10))
        if not any(b):
            continue
        norm = math.sqrt(sum(x * x for x in b))
        sums = [abs(sum(e * x for e, x in zip(s, b))) for s in itertools.product((1, -1), repeat=10)]
        if min(abs(s - norm) for s in sums) <= 1e-6 * norm:
            continue
        exact = count_plank_exact(IntWeightVector(b))
        flt = count_plank_gray(normalize(b))
        assert (exact.inside, exact.outside) == (flt.inside, flt.outside)
        checked += 1
    assert checked > 50


@pytest.mark.parametrize("n", [2, 5, 9, 13])
def test_sign_symmetry_and_identity(n):
    for u in random_units(n, 30, seed=6):
        t = tally(u)
        assert t.out_pos == t.out_neg
        plank, hs = t.plank(), t.halfspace()
        assert plank.outside % 2 == 0
        assert plank.satisfied == 2**n - 2 * hs.strict_interior
        assert plank.outside == 2 * hs.strict_interior


def test_bigint_fallback_and_overflow():
    huge = (3 * 10**12, 4 * 10**12, 1)
    c = count_plank_exact(IntWeightVector(huge))
    ref = brute_exact(list(huge))
    assert (c.inside, c.boundary, c.outside) == (ref["inside"], ref["boundary"], ref["outside"])
    with pytest.raises(ExactOverflowError):
        count_plank_exact(IntWeightVector((10**12,) * 21))


def test_capacity_and_input_errors():
    with pytest.raises(CapacityError):
        count_plank_naive(normalize([1.0] * 27))
    with pytest.raises(CapacityError):
        count_plank_exact(IntWeightVector((1,) * 35))
    with pytest.raises(InvalidInputError):
        count_plank_gray(WeightVector((0.5, 0.5)))
    with pytest.raises(InvalidInputError):
        EnumConfig(tol=1.0)
    with pytest.raises(InvalidInputError):
        EnumConfig(reanchor_period=0)
    with pytest.raises(InvalidInputError):
        count_parallel(normalize([1, 1]), workers=0)


def test_zero_tol_band():
    c = count_plank_gray(normalize([1, 0]), EnumConfig(tol=0.0))
    assert c.boundary == 4


def test_kernels_release_the_gil():
    # thread-level chunk parallelism relies on this
    for kernel in (_kernels.gray_float, _kernels.gray_exact):
        assert kernel.targetoptions.get("nogil") is True
