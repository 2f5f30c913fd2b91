from __future__ import annotations

import itertools
import random

import pytest

from strictunits.dyer_lashof import (
    PRESETS,
    CutoffExceeded,
    EpsilonStructure,
    act_on_power,
    act_word,
    dl_adem_reduce,
    excess,
    halve,
    is_allowable,
    kahler_action,
    power_sum_coefficient,
    unhalve,
)

CUTOFF = 80


def _brute_power_sum(eps: EpsilonStructure, parts: int, total: int) -> int:
    """Oracle: sum over all ordered compositions."""
    acc = 0
    for comp in itertools.product(range(total + 1), repeat=parts):
        if sum(comp) == total:
            prod = 1
            for a in comp:
                prod &= eps[a]
            acc ^= prod
    return acc


@pytest.mark.parametrize("name", PRESETS)
def test_power_sum_against_compositions(name):
    eps = EpsilonStructure.preset(name, CUTOFF)
    for parts in range(1, 5):
        for total in range(0, 9):
            assert power_sum_coefficient(eps, parts, total) == _brute_power_sum(eps, parts, total)


def _act_sum(eps: EpsilonStructure, terms, n: int) -> frozenset[int]:
    out: set[int] = set()
    for t in terms:
        e = act_word(eps, t, n)
        if e is not None:
            out ^= {e}
    return frozenset(out)


@pytest.mark.parametrize("name", PRESETS)
def test_adem_normal_form_acts_like_the_word(name):
    """On a genuine structure the word and its allowable form agree on every u^n."""
    eps = EpsilonStructure.preset(name, CUTOFF)
    rng = random.Random(7)
    for _ in range(150):
        word = [2 * rng.randint(0, 6) for _ in range(rng.randint(2, 3))]
        for n in range(1, 5):
            direct = act_word(eps, word, n)
            expected = frozenset() if direct is None else frozenset({direct})
            assert _act_sum(eps, dl_adem_reduce(word), n) == expected, (word, n)


def test_normal_form_is_allowable_and_stable():
    rng = random.Random(3)
    for _ in range(200):
        word = [rng.randint(0, 12) for _ in range(rng.randint(1, 4))]
        terms = dl_adem_reduce(word)
        for t in terms:
            assert is_allowable(t)
            assert sum(t) == sum(word)
            assert dl_adem_reduce(t) == frozenset({t})


def test_hand_computed_relations():
    # Q^r Q^s = sum_i C(i - s - 1, 2i - r) Q^{r+s-i} Q^i for r > 2s
    assert dl_adem_reduce([6, 2]) == frozenset({(5, 3)})
    assert dl_adem_reduce([5, 2]) == frozenset()
    assert dl_adem_reduce([4, 2]) == frozenset({(4, 2)})


def test_bookkeeping_helpers():
    assert excess((6, 2, 1)) == 3
    with pytest.raises(ValueError):
        excess(())
    assert halve(unhalve(7)) == 7
    with pytest.raises(ValueError):
        halve(3)


def test_epsilon_structure_validation():
    with pytest.raises(ValueError):
        EpsilonStructure((1, 1, 0))
    with pytest.raises(ValueError):
        EpsilonStructure((0, 0, 0))
    eps = EpsilonStructure.parse("eps=0110")
    assert eps.cutoff == 3
    with pytest.raises(CutoffExceeded):
        eps[4]
    assert str(EpsilonStructure.parse("segal", 4)) == "eps=01000"


def test_action_formulas():
    eps = EpsilonStructure.preset("bllmm", 20)
    # Q^{2r} u = u^{r+1} for every r >= 1
    for r in range(1, 10):
        assert act_on_power(eps, r, 1) == 1
    # Q^0 vanishes on u, and Q^{2r} u^2 = (Q^r u)^2 is nonzero only for even r
    assert act_on_power(eps, 0, 1) == 0
    for r in range(1, 12):
        assert act_on_power(eps, r, 2) == (1 if r % 2 == 0 and eps[r // 2] else 0)
    assert act_word(eps, [3], 1) is None
    assert kahler_action(eps, 2) == 1 and kahler_action(eps, 1) == 0
