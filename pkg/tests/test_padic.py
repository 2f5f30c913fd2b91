from __future__ import annotations

import random
from fractions import Fraction

import pytest

from strictunits.padic import (
    NotAGenerator,
    NotInLattice,
    PadicInt,
    RootDomain,
    ZpLattice,
    default_generator,
    is_topological_generator,
    lattice_homology,
    nu,
    principal_log,
    principal_part,
    quotient_order,
    smith_form,
    unit_pow,
    valuation_one_minus_power,
)


def _exact_nu(p: int, n: int) -> int:
    """Oracle: repeated division of a big integer, via string-free arithmetic."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@pytest.mark.parametrize("p", [3, 5, 7])
def test_valuation_one_minus_power_against_big_integers(p):
    l = default_generator(p)
    for i in range(1, 201):
        assert valuation_one_minus_power(p, l, i) == _exact_nu(p, l**i - 1), i


def _mult_order(a: int, mod: int) -> int:
    k, x = 1, a % mod
    while x != 1:
        x = x * a % mod
        k += 1
    return k


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_topological_generators_by_brute_force(p):
    mod = p**3
    phi = p * p * (p - 1)
    for l in range(1, 2 * p * p):
        if l % p == 0:
            assert not is_topological_generator(p, l)
            continue
        assert is_topological_generator(p, l) == (_mult_order(l, mod) == phi)


def test_default_generators():
    assert [default_generator(p) for p in (3, 5, 7)] == [2, 2, 3]
    with pytest.raises(NotAGenerator):
        default_generator(2)
    with pytest.raises(NotAGenerator):
        valuation_one_minus_power(7, 2, 6)


def test_arithmetic_and_truncation():
    a = PadicInt(3, 5, 7)
    b = PadicInt(3, 3, 2)
    c = a * b
    assert c.N == 3 and c.value == 14 % 27
    assert (a * a.inverse()).value == 1
    assert PadicInt(3, 5, 18).valuation() == 2
    assert PadicInt(3, 5, 18).divide_by_p_power(2) == PadicInt(3, 3, 2)
    assert (a**-1) * a == PadicInt(3, 5, 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_unit_pow_round_trips(p):
    rng = random.Random(p)
    q = 4 if p == 2 else p
    for _ in range(200):
        x = PadicInt(p, 12, 1 + q * rng.randrange(p**11))
        d = rng.choice([k for k in range(1, 30) if k % p])
        assert unit_pow(x, 1, d) ** d == x
        assert unit_pow(x**d, 1, d) == x
        assert unit_pow(x, 3, d) == unit_pow(x, 1, d) ** 3


def test_unit_pow_known_root():
    assert unit_pow(PadicInt(3, 4, 4), 1, 2).value == 79
    assert (79 * 79 - 4) % 81 == 0


def test_unit_pow_domain_errors():
    with pytest.raises(RootDomain):
        unit_pow(PadicInt(3, 6, 3), 1, 2)
    with pytest.raises(RootDomain):
        unit_pow(PadicInt(3, 6, 4), 1, 3)
    with pytest.raises(RootDomain):
        unit_pow(PadicInt(3, 6, 2), 1, 2)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_principal_log_is_a_homomorphism(p):
    rng = random.Random(11)
    N = 10
    q = 4 if p == 2 else p
    order = p ** (N - 2 if p == 2 else N - 1)
    for _ in range(100):
        x = PadicInt(p, N, 1 + q * rng.randrange(p**N))
        y = PadicInt(p, N, 1 + q * rng.randrange(p**N))
        assert (principal_log(x * y) - principal_log(x) - principal_log(y)) % order == 0
        base = PadicInt(p, N, 5 if p == 2 else 1 + p)
        assert base ** principal_log(x) == x


def test_principal_part():
    sign, rest = principal_part(PadicInt(2, 8, 7))
    assert sign == -1 and rest.value == (-7) % 256
    r, u = principal_part(PadicInt(5, 6, 13))
    assert r == 3 and u.is_principal()


def _det(m: list[list[int]]) -> int:
    """Oracle: exact determinant over the rationals."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


@pytest.mark.parametrize("seed", range(30))
def test_smith_form_against_determinant(seed):
    rng = random.Random(seed)
    p, N = rng.choice([2, 3, 5]), 30
    n = rng.randint(1, 5)
    m = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)]
    d = _det(m)
    exps, u, v = smith_form(m, p, N)
    mod = p**N
    # U A V is diagonal with the listed p-powers up to units
    prod = [[sum(u[i][k] * sum(m[k][l] * v[l][j] for l in range(n)) for k in range(n)) % mod for j in range(n)]
            for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                assert prod[i][j] == 0
    for k, e in enumerate(exps):
        assert nu(p, prod[k][k]) == e
    if d:
        assert len(exps) == n and sum(exps) == nu(p, d)
    else:
        assert len(exps) < n


def test_lattice_coordinates_and_errors():
    lat = ZpLattice.span(3, 6, 3, [(1, 0, 0), (0, 3, 0)])
    assert lat.rank == 2
    coords = lat.coordinates([(2, 6, 0)])
    recon = [sum(b[i] * coords[k][0] for k, b in enumerate(lat.basis)) % 3**6 for i in range(3)]
    assert recon == [2, 6, 0]
    with pytest.raises(NotInLattice):
        lat.coordinates([(0, 1, 0)])
    with pytest.raises(NotInLattice):
        lat.coordinates([(0, 0, 1)])


def test_lattice_homology_small_complex():
    # Z_3 --3--> Z_3 : homology 0 then Z/3
    h = lattice_homology(3, 8, [1, 1], [[[3]]])
    assert [str(x) for x in h] == ["0", "Z/3"]
    h = lattice_homology(5, 8, [1, 2, 1], [[[1], [1]], [[1, -1]]])
    assert all(x.is_zero() for x in h)


def test_quotient_order():
    assert quotient_order(3, 5, 2) == 27
    with pytest.raises(ValueError):
        quotient_order(3, 1, 2)
    with pytest.raises(ValueError):
        nu(3, 0)
