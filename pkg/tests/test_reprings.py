from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from strictunits.padic import NotAGenerator, nu
from strictunits.reprings import (
    CharElem,
    GroupDescription,
    alpha,
    beta,
    character_vectors,
    determinant_unit_factor,
    equivalence_classes,
    gamma,
    j_complex_homology,
    j_groups,
    k0_rank,
    ktheory_complex_check,
    line_block_determinant_valuation,
    psi,
    psi_l_kernel,
    steinberg_add,
    transfer_K,
)


def _gl(p: int, s: int):
    for entries in itertools.product(range(p), repeat=s * s):
        g = [list(entries[i * s:(i + 1) * s]) for i in range(s)]
        if _det(g, p) % p:
            yield g


def _det(g, p):
    if len(g) == 1:
        return g[0][0]
    if len(g) == 2:
        return g[0][0] * g[1][1] - g[0][1] * g[1][0]
    return sum((-1) ** j * g[0][j] * _det([row[:j] + row[j + 1:] for row in g[1:]], p) for j in range(len(g)))


def test_basic_steinberg_relations():
    for p in (3, 5):
        assert steinberg_add(CharElem.chi(p, (0,))) == CharElem.chi(p, (0,))
        e1 = steinberg_add(CharElem.chi(p, (1, 0)))
        e2 = steinberg_add(CharElem.chi(p, (0, 1)))
        assert e2 == e1.scale(-p)
        for v in character_vectors(p, 3):
            assert steinberg_add(CharElem.chi(p, v, 6)) == CharElem.zero(p, 3, 6)


@pytest.mark.parametrize("p,s", [(3, 1), (3, 2), (5, 1), (5, 2), (3, 3)])
def test_steinberg_add_is_idempotent(p, s):
    for v in character_vectors(p, s):
        y = steinberg_add(CharElem.chi(p, v, 8))
        assert steinberg_add(y) == y


def test_k0_lattice_is_fixed_by_steinberg():
    p = 3
    _rank, lat = k0_rank(2, p, 8)
    for b in lat.basis:
        x = CharElem(p, 2, 8, tuple(b))
        assert steinberg_add(x) == x


@pytest.mark.parametrize("p", [3, 5])
def test_k0_ranks(p):
    s_max = 4 if p == 3 else 3
    assert [k0_rank(s, p)[0] for s in range(s_max + 1)] == [1, 2, 1, 0, 0][: s_max + 1]


@pytest.mark.parametrize("p,s", [(3, 1), (3, 2), (3, 3), (5, 2)])
def test_equivalence_class_count(p, s):
    classes = equivalence_classes(p, s)
    assert len(classes) == s + 1
    assert sorted(v for c in classes for v in c) == sorted(character_vectors(p, s))


def test_psi_commutes_with_gl():
    p = 5
    for g in list(_gl(p, 2))[::37]:
        for v in [(1, 0), (2, 3), (0, 4)]:
            x = CharElem.chi(p, v)
            assert psi(x.act(g), 2) == psi(x, 2).act(g)


def test_act_is_an_action_by_transpose():
    p = 3
    gs = list(_gl(p, 2))[:10]
    x = CharElem.chi(p, (1, 2))
    for g, h in itertools.product(gs, repeat=2):
        gh = [[sum(g[i][k] * h[k][j] for k in range(2)) % p for j in range(2)] for i in range(2)]
        assert x.act(g).act(h) == x.act(gh)


@pytest.mark.parametrize("p", [3, 5])
def test_transfers(p):
    one = CharElem.chi(p, ())
    assert transfer_K(one) == alpha(p) + beta(p)
    inv = pow(p + 1, -1, p**12)
    assert transfer_K(alpha(p)) == gamma(p).scale(inv)
    assert transfer_K(beta(p)) == gamma(p).scale(-inv)
    assert steinberg_add(gamma(p)) == gamma(p)
    assert transfer_K(one, apply_steinberg=False) == CharElem.from_dict(p, 1, {(a,): 1 for a in range(p)})


@pytest.mark.parametrize("p", [3, 5])
def test_ktheory_exact(p):
    r = ktheory_complex_check(p)
    assert r.ranks_M == [1, 2, 1, 0]
    assert r.ranks_L == [1, 1, 0, 0]
    assert r.transfer_images == {"1": "1*alpha + 1*beta", "alpha": f"1/{p + 1}*gamma", "beta": f"-1/{p + 1}*gamma"}
    assert r.exact


@pytest.mark.parametrize("p,s", [(3, 0), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2)])
def test_psi_kernel_rank(p, s):
    basis = psi_l_kernel(s, p)
    assert len(basis) == (p**s - 1) // (p - 1)
    for x in basis:
        assert x.rank() == 0
        assert psi(x, 2) == x


def test_psi_kernel_rejects_non_generators():
    with pytest.raises(NotAGenerator):
        psi_l_kernel(1, 5, 4)
    with pytest.raises(NotAGenerator):
        j_groups(1, 3, 3, l=10)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_determinant_factor_is_a_unit(p):
    for i in range(1, 101):
        assert determinant_unit_factor(p, 2 if p != 7 else 3, i) % p != 0


@pytest.mark.parametrize("p,l", [(3, 2), (5, 2), (7, 3)])
def test_line_block_valuation(p, l):
    for i in range(1, 60):
        v0, vline = line_block_determinant_valuation(p, l, i)
        assert vline == nu(p, i) + 1
        assert v0 == (nu(p, i) + 1 if i % (p - 1) == 0 else 0)


def test_line_block_against_direct_determinant():
    """det(cP - 1) for a (p-1)-cycle P equals (-1)^{p-1}(1 - c^{p-1})."""
    for p in (3, 5, 7):
        for c in range(2, 20):
            m = p - 1
            mat = [[(c if a == (b + 1) % m else 0) - int(a == b) for b in range(m)] for a in range(m)]
            rows = [[Fraction(x) for x in r] for r in mat]
            det = Fraction(1)
            for k in range(m):
                piv = next(r for r in range(k, m) if rows[r][k] != 0)
                if piv != k:
                    rows[k], rows[piv] = rows[piv], rows[k]
                    det = -det
                det *= rows[k][k]
                for r in range(k + 1, m):
                    f = rows[r][k] / rows[k][k]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[k])]
            assert det == (-1) ** m * (1 - c**m)


def test_group_description_cancellation():
    g = GroupDescription(3, 1, (2, 1))
    assert str(g) == "Z_3 x Z/3 x Z/9"
    assert g.minus(GroupDescription(3, 0, (1,))) == GroupDescription(3, 1, (2,))
    with pytest.raises(ValueError):
        g.minus(GroupDescription(3, 2))


@pytest.mark.parametrize("p", [3, 5])
def test_j_groups_odd_degrees(p):
    """Frozen: [M(s), Omega^i j] for i = 2t - 1 with (p-1) | t is (Z/q, (Z/q)^2, Z/q, 0), q = p^{nu(t)+1}."""
    for t in range(p - 1, 2 * p * (p - 1) + 1, p - 1):
        i = 2 * t - 1
        q = nu(p, t) + 1
        assert j_groups(0, i, p) == GroupDescription(p, 0, (q,))
        assert j_groups(1, i, p) == GroupDescription(p, 0, (q, q))
        assert j_groups(2, i, p) == GroupDescription(p, 0, (q,))
        assert j_groups(3, i, p).is_zero()
        assert j_groups(1, i, p, variant="L") == GroupDescription(p, 0, (q,))
        assert j_groups(2, i, p, variant="L").is_zero()


@pytest.mark.parametrize("p", [3, 5])
def test_j_groups_vanish_off_the_image(p):
    for i in range(1, 30):
        t = (i + 1) // 2
        if i % 2 == 0 or t % (p - 1):
            for s in range(3):
                assert j_groups(s, i, p).is_zero()


@pytest.mark.parametrize("p", [3, 5])
def test_j_degree_zero(p):
    r = j_complex_homology(p, i=0)
    assert r.groups == ["0", f"Z_{p}", f"Z_{p}", "0"]
    assert r.homology == ["0", "0", f"Z/{p}", "0"]
    rl = j_complex_homology(p, i=0, variant="L")
    assert rl.groups == ["0", f"Z_{p}", "0", "0"]


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("variant", ["M", "L"])
def test_j_positive_degrees_exact(p, variant):
    for i in range(1, 21):
        assert j_complex_homology(p, i=i, variant=variant).exact
