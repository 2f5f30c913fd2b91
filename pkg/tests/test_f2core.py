from __future__ import annotations

import itertools
import random
from math import comb

import numpy as np
import pytest

from strictunits.f2core import (
    F2Matrix,
    ImageNotContained,
    binom_mod2,
    echelon,
    rank_kernel_image,
    span_contains,
    subquotient,
    vector_from_indices,
    vector_indices,
)


def _span_size(vectors: list[int]) -> int:
    """Oracle: enumerate every subset sum."""
    span = {0}
    for v in vectors:
        span |= {x ^ v for x in span}
    return len(span)


def test_binom_mod2_matches_comb():
    for n in range(0, 70):
        for k in range(-2, n + 3):
            expected = comb(n, k) % 2 if 0 <= k <= n else 0
            assert binom_mod2(n, k) == expected


def test_vector_index_round_trip():
    for idx in ([], [0], [3, 1, 7], list(range(40))):
        assert vector_indices(vector_from_indices(idx)) == sorted(idx)


@pytest.mark.parametrize("seed", range(20))
def test_rank_against_subset_enumeration(seed):
    rng = random.Random(seed)
    rows = [rng.getrandbits(9) for _ in range(rng.randint(1, 8))]
    m = F2Matrix(len(rows), 9, tuple(rows))
    assert 2 ** m.rank() == _span_size(rows)


@pytest.mark.parametrize("seed", range(20))
def test_rank_nullity_and_kernel(seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 2, size=(rng.integers(1, 9), rng.integers(1, 9)))
    m = F2Matrix.from_array(a)
    rank, kernel, image = rank_kernel_image(m)
    assert rank + len(kernel) == m.ncols
    assert len(image) == rank
    for v in kernel:
        assert m.apply(v) == 0
    for v in image:
        assert span_contains(m.columns(), v)


def test_array_round_trip_and_product():
    a = np.array([[1, 0, 1], [0, 1, 1]])
    b = np.array([[1, 1], [0, 1], [1, 0]])
    m, n = F2Matrix.from_array(a), F2Matrix.from_array(b)
    assert np.array_equal(m.to_array(), a)
    assert np.array_equal((m @ n).to_array(), (a @ b) % 2)
    assert m.transpose().transpose() == m


def test_echelon_is_reduced():
    rows, pivots = echelon([0b110, 0b011, 0b101])
    assert len(rows) == 2
    for r, p in zip(rows, pivots):
        for other in rows:
            if other is not r:
                assert not other >> p & 1


def test_subquotient_dimension():
    dim, reps = subquotient([0b001, 0b010, 0b100], [0b011])
    assert dim == 2
    assert len(reps) == 2


def test_subquotient_rejects_foreign_image():
    with pytest.raises(ImageNotContained):
        subquotient([0b001], [0b010])


def test_exhaustive_small_ranks():
    for rows in itertools.product(range(8), repeat=3):
        assert 2 ** F2Matrix(3, 3, rows).rank() == _span_size(list(rows))
