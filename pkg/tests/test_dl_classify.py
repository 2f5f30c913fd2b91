from __future__ import annotations

from math import comb

import pytest

from strictunits.dl_classify import (
    a_nq,
    a_nq_generating_function,
    adem_instance_value,
    b_nq,
    binom_parity,
    check_identity_anq,
    check_recurrence_a,
    check_recurrence_b,
    classify_pattern,
    enumerate_structures,
    structural_constraints,
)
from strictunits.dyer_lashof import PRESETS, EpsilonStructure


def test_a_nq_against_generating_function():
    """The binomial sum and the exact coefficient extraction agree mod 2."""
    for n in range(0, 25):
        for q in range(1, 25):
            assert a_nq(n, q) == a_nq_generating_function(n, q) % 2


def test_b_nq_is_a_binomial():
    for n in range(0, 30):
        for q in range(1, 30):
            assert b_nq(n, q) == comb(n + 3 * q, 2 * q - 1) % 2


def test_identity_and_recurrences():
    assert all(check_identity_anq(n, q) for n in range(0, 41) for q in range(1, 41))
    assert all(check_recurrence_a(n, q) for n in range(3, 41) for q in range(1, 41))
    assert all(check_recurrence_b(n, q) for n in range(3, 41) for q in range(1, 41))


def test_central_binomial_parity():
    assert all(binom_parity(3 * q + 2, 2 * q + 1) == 0 for q in range(0, 201))
    assert binom_parity(3, 5) == 0 and binom_parity(4, -1) == 0


def test_identity_domain():
    with pytest.raises(ValueError):
        check_identity_anq(0, 0)


@pytest.mark.parametrize("name", PRESETS)
def test_presets_satisfy_adem_instances(name):
    eps = EpsilonStructure.preset(name, 40)
    for a in range(2, 40, 2):
        for b in range(0, a // 2, 2):
            if a > 2 * b:
                assert adem_instance_value(eps.eps, a, b) == 0, (a, b)
    assert structural_constraints(eps) == []


def test_rejects_a_non_structure():
    eps = EpsilonStructure.parse("eps=011000000000")
    assert structural_constraints(eps)


@pytest.mark.parametrize("cutoff", [8, 16, 32])
def test_four_survivors(cutoff):
    report = enumerate_structures(cutoff)
    assert sorted(report.patterns().values()) == sorted(PRESETS)


def test_classify_pattern():
    assert classify_pattern("eps=01000") == "segal"
    assert classify_pattern("010101010") == "odd"
    assert classify_pattern("010100010") == "thh"
    assert classify_pattern("0110") is None
