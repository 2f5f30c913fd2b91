from __future__ import annotations

import pytest

from strictunits.ghm import (
    ChartClass,
    build_complex,
    chart,
    check_conjecture,
    format_chain,
    homology_probe,
    homotopy_table,
    postnikov_chart,
    sq_4i_2i_i_class,
)
from strictunits.reference import HOMOTOPY_TABLE
from strictunits.steenrod import adem_reduce


def _admissible(degree: int, max_first: int) -> list[tuple[int, ...]]:
    """Oracle: admissible sequences built from the left, independent of the library."""
    if degree == 0:
        return [()]
    out = []
    for first in range(min(degree, max_first), 0, -1):
        for rest in _admissible(degree - first, first // 2):
            out.append((first,) + rest)
    return out


def _expected_classes(m: int, stems: tuple[int, int], filts: tuple[int, int]) -> set[tuple[int, int, str]]:
    out = set()
    for n in range(1, m + 1):
        for stem in range(stems[0], stems[1] + 1):
            deg = 2 * n - stem
            if deg < 0:
                continue
            for mono in _admissible(deg, deg):
                if mono and mono[-1] == 1:
                    continue
                if filts[0] <= len(mono) <= filts[1]:
                    body = ",".join(map(str, mono))
                    out.add((stem, len(mono), f"u^{n}.Sq[{body}]"))
    return out


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_chart_classes_match_enumeration(m):
    c = chart(m)
    got = {(a, s, label) for a, s, label, _ in c.rows()}
    assert got == _expected_classes(m, c.stems, c.filtrations)


def test_truncation_five_counts():
    c = chart(5)
    assert len(c.rows()) == 51
    assert len(c.arrows()) == 4


def test_d1_is_u_squared_times_sq():
    """d_1(u^n x) = u^{2n} Sq^{2n+1} x, dropped once 2n exceeds the truncation."""
    c = chart(5)
    for _, _, cls in c.classes:
        image = c.d1[cls]
        if 2 * cls.n > 5:
            assert image is None
            continue
        word = [2 * cls.n + 1] + list(cls.monomial)
        terms = sorted(t for t in adem_reduce(word).terms if not (t and t[-1] == 1))
        expected = sorted(ChartClass(2 * cls.n, t).label() for t in terms)
        assert sorted(x.label() for x in image) == expected


def test_known_arrows():
    arrows = {src.label(): format_chain(img) for src, img in chart(5).arrows()}
    assert arrows == {
        "u^1.Sq[]": "u^2.Sq[3]",
        "u^2.Sq[]": "u^4.Sq[5]",
        "u^2.Sq[2]": "u^4.Sq[5,2]",
        "u^2.Sq[4]": "u^4.Sq[7,2]",
    }


@pytest.mark.parametrize("m", range(1, 9))
def test_d1_squares_to_zero(m):
    assert build_complex(m, (-4, 2 * m), 3).check_d_squared()


def test_homotopy_table_rows_that_agree():
    t = homotopy_table(5)
    for m in (1, 4, 5):
        assert t.dims[m] == list(HOMOTOPY_TABLE[m])
    # positive degrees agree for every row
    for m in range(1, 6):
        assert t.dims[m][1:] == list(HOMOTOPY_TABLE[m][1:])


def test_class_parsing():
    c = ChartClass.parse("u^4.Sq[6,3]")
    assert (c.n, c.monomial, c.stem, c.length) == (4, (6, 3), -1, 2)
    with pytest.raises(ValueError):
        ChartClass(1, (2, 1))
    with pytest.raises(ValueError):
        ChartClass(0, ())


def test_postnikov_chart():
    p = postnikov_chart(4)
    assert p.kind == "postnikov"
    rows = {r[2]: r[3] for r in p.rows()}
    assert rows["u^1.Sq[]"] == "u^2.Sq[3]"
    with pytest.raises(ValueError):
        postnikov_chart(6)


@pytest.mark.parametrize("i", range(1, 9))
def test_sq_4i_2i_i(i):
    assert sq_4i_2i_i_class(i) == (True, True)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_conjecture_restricted(k):
    assert check_conjecture(k).holds(restricted=True)


def test_conjecture_untruncated_fails_at_k1():
    assert not check_conjecture(1).holds(restricted=False)


def test_probe_classes():
    r = homology_probe(6, monomials=[(8, 4, 2)])
    assert r.checks["Sq[8,4,2]"]["untruncated_nonzero"]
    assert r.nonzero_degrees(restricted=True) == [14]
    with pytest.raises(ValueError):
        homology_probe(5)
