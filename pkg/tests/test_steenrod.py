from __future__ import annotations

import random
from functools import lru_cache
from math import comb

import pytest

from strictunits.steenrod import (
    Convention,
    ConventionMismatch,
    SteenrodElement,
    adem_reduce,
    admissible_monomials,
    basis,
    format_monomial,
    is_admissible,
    left_mult_matrix,
    left_multiply,
    parse_monomial,
)

# Oracle: the action on H^*((RP^inf)^k) = F2[x_1..x_k], faithful on elements
# of degree at most k when evaluated on x_1 ... x_k.


@lru_cache(maxsize=None)
def _sq_monomial(i: int, exps: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """Cartan formula, one variable at a time."""
    if not exps:
        return frozenset({()}) if i == 0 else frozenset()
    n, rest = exps[0], exps[1:]
    out: set[tuple[int, ...]] = set()
    for a in range(0, min(n, i) + 1):
        if comb(n, a) % 2:
            out ^= {(n + a,) + t for t in _sq_monomial(i - a, rest)}
    return frozenset(out)


def _act(word: tuple[int, ...], k: int) -> frozenset[tuple[int, ...]]:
    poly = {(1,) * k}
    for i in reversed(word):
        nxt: set[tuple[int, ...]] = set()
        for m in poly:
            nxt ^= _sq_monomial(i, m)
        poly = nxt
    return frozenset(poly)


def _act_element(x: SteenrodElement, k: int) -> frozenset[tuple[int, ...]]:
    acc: set[tuple[int, ...]] = set()
    for t in x.terms:
        acc ^= set(_act(t, k))
    return frozenset(acc)


@pytest.mark.parametrize("seed", range(40))
def test_adem_reduce_agrees_with_cohomology_action(seed):
    rng = random.Random(seed)
    word = tuple(rng.randint(1, 4) for _ in range(rng.randint(2, 3)))
    if sum(word) > 9:
        word = word[:2]
    k = sum(word)
    assert _act_element(adem_reduce(word), k) == _act(word, k)


@lru_cache(maxsize=None)
def _admissible_count(n: int) -> int:
    """Coefficient of t^n in prod_{j>=1} 1/(1 - t^(2^j - 1))."""
    parts = [2**j - 1 for j in range(1, 10) if 2**j - 1 <= n]
    ways = [1] + [0] * n
    for p in parts:
        for d in range(p, n + 1):
            ways[d] += ways[d - p]
    return ways[n]


@pytest.mark.parametrize("n", range(0, 30))
def test_admissible_counts(n):
    mons = admissible_monomials(n)
    assert len(mons) == _admissible_count(n)
    assert all(is_admissible(m) and sum(m) == n for m in mons)


def test_quotient_basis_drops_sq1():
    for d in range(1, 20):
        b = basis(d)
        assert all(not m or m[-1] != 1 for m in b.monomials)
        assert len(b.monomials) + len([m for m in admissible_monomials(d) if m and m[-1] == 1]) == len(
            admissible_monomials(d)
        )


def test_known_relations():
    assert adem_reduce([1, 1]).terms == frozenset()
    assert adem_reduce([2, 2]).terms == frozenset({(3, 1)})
    assert adem_reduce([3, 2]).terms == frozenset()
    assert adem_reduce([5, 4]).terms == frozenset({(7, 2)})
    assert adem_reduce([2, 3]).terms == frozenset({(5,), (4, 1)})


def test_parse_and_format_round_trip():
    for m in [(), (8, 4, 2), (17, 8, 4, 2)]:
        assert parse_monomial(format_monomial(m)) == m
    with pytest.raises(ValueError):
        parse_monomial("Sq(1)")


def test_left_mult_matrix_matches_left_multiply():
    for k in (1, 2, 3, 5):
        for d in (2, 4, 7):
            mat = left_mult_matrix(k, d)
            src, tgt = basis(d), basis(d + k)
            idx = tgt.index()
            for j, m in enumerate(src.monomials):
                img = left_multiply(k, SteenrodElement.from_word(m, quotient=True))
                col = {idx[t] for t in img.terms}
                assert {i for i in range(mat.nrows) if mat[i, j]} == col


def test_conventions_do_not_mix():
    a = SteenrodElement.one(Convention.SQ0_IS_ONE)
    b = SteenrodElement.one(Convention.SQ0_IS_ZERO)
    with pytest.raises(ConventionMismatch):
        a + b
