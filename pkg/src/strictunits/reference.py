"""Published reference values that the checks compare against.

Each constant is a literal transcription; nothing here is computed.  The
``claim`` strings name the statement a check targets and are carried into
JSON reports.
"""

from __future__ import annotations

# E_1 page for F2[u]/u^6: (stem, filtration, class) in the printed order.
CHART_CLASSES: tuple[tuple[int, int, str], ...] = (
    (2, 0, "u^1.Sq[]"),
    (0, 1, "u^1.Sq[2]"),
    (-1, 1, "u^1.Sq[3]"),
    (4, 0, "u^2.Sq[]"),
    (2, 1, "u^2.Sq[2]"),
    (1, 1, "u^2.Sq[3]"),
    (0, 1, "u^2.Sq[4]"),
    (-1, 1, "u^2.Sq[5]"),
    (6, 0, "u^3.Sq[]"),
    (4, 1, "u^3.Sq[2]"),
    (3, 1, "u^3.Sq[3]"),
    (2, 1, "u^3.Sq[4]"),
    (1, 1, "u^3.Sq[5]"),
    (0, 1, "u^3.Sq[6]"),
    (-1, 1, "u^3.Sq[7]"),
    (8, 0, "u^4.Sq[]"),
    (6, 1, "u^4.Sq[2]"),
    (5, 1, "u^4.Sq[3]"),
    (4, 1, "u^4.Sq[4]"),
    (3, 1, "u^4.Sq[5]"),
    (2, 1, "u^4.Sq[6]"),
    (2, 2, "u^4.Sq[4,2]"),
    (1, 1, "u^4.Sq[7]"),
    (1, 2, "u^4.Sq[5,2]"),
    (0, 1, "u^4.Sq[8]"),
    (0, 2, "u^4.Sq[6,2]"),
    (-1, 1, "u^4.Sq[9]"),
    (-1, 2, "u^4.Sq[7,2]"),
    (-1, 2, "u^4.Sq[6,3]"),
    (10, 0, "u^5.Sq[]"),
    (8, 1, "u^5.Sq[2]"),
    (7, 1, "u^5.Sq[3]"),
    (6, 1, "u^5.Sq[4]"),
    (5, 1, "u^5.Sq[5]"),
    (4, 1, "u^5.Sq[6]"),
    (4, 2, "u^5.Sq[4,2]"),
    (3, 1, "u^5.Sq[7]"),
    (3, 2, "u^5.Sq[5,2]"),
    (2, 1, "u^5.Sq[8]"),
    (2, 2, "u^5.Sq[6,2]"),
    (1, 1, "u^5.Sq[9]"),
    (1, 2, "u^5.Sq[7,2]"),
    (1, 2, "u^5.Sq[6,3]"),
    (0, 1, "u^5.Sq[10]"),
    (0, 2, "u^5.Sq[8,2]"),
    (0, 2, "u^5.Sq[7,3]"),
    (-1, 1, "u^5.Sq[11]"),
    (-1, 2, "u^5.Sq[9,2]"),
    (-1, 2, "u^5.Sq[8,3]"),
)

# d_1 arrows as (stem, filtration, source index, target index), 1-based
# indices into the classes at the source and target bidegrees.
CHART_D1_INDEXED: tuple[tuple[int, int, int, int], ...] = (
    (2, 0, 1, 1),
    (4, 0, 1, 2),
    (2, 1, 1, 1),
    (0, 1, 2, 2),
)


def chart_arrows() -> list[tuple[str, str]]:
    """Resolve the indexed arrows to (source, target) class labels."""
    out = []
    for a, s, i, j in CHART_D1_INDEXED:
        here = [c for x, y, c in CHART_CLASSES if (x, y) == (a, s)]
        there = [c for x, y, c in CHART_CLASSES if (x, y) == (a - 1, s + 1)]
        out.append((here[i - 1], there[j - 1]))
    return out


# dim pi_i of the strict units of F2[u]/u^{n+1}; rows n = 1..8, entries i = 0..2n.
HOMOTOPY_TABLE: dict[int, tuple[int, ...]] = {
    1: (1, 0, 1),
    2: (1, 0, 1, 0, 1),
    3: (3, 1, 2, 1, 2, 0, 1),
    4: (5, 2, 3, 1, 2, 1, 2, 0, 1),
    5: (8, 5, 5, 3, 4, 2, 3, 1, 2, 0, 1),
    6: (9, 7, 7, 4, 5, 3, 4, 2, 3, 1, 2, 0, 1),
    7: (14, 11, 11, 7, 8, 6, 6, 4, 5, 2, 3, 1, 2, 0, 1),
    8: (17, 14, 14, 10, 10, 7, 8, 6, 6, 4, 5, 2, 3, 1, 2, 0, 1),
}

# Nonzero classes of ker Sq^{2n+1} / im Sq^{n+1} found by search.
PROBE_CLASSES: dict[int, tuple[tuple[int, ...], ...]] = {
    6: ((8, 4, 2),),
    10: ((12, 6, 3),),
    14: ((16, 8, 4), (16, 8, 4, 2), (17, 8, 4, 2)),
}

# The four Dyer-Lashof structures on F2[u] with deg u = 2.
DL_PATTERNS: tuple[str, ...] = ("segal", "thh", "odd", "bllmm")

# Units of Burnside-ring Steinberg summands: orders of homology per s = 0..3.
UNIT_HOMOLOGY_ODD = {"M": ("0", "0", "Z/p", "0"), "L": ("0", "0", "0", "0")}
UNIT_HOMOLOGY_P2 = {"M": ("0", "0", "0", "0"), "L": ("0", "0", "Z/2 x Z/2", "0")}

K0_RANKS: tuple[int, ...] = (1, 2, 1, 0, 0)

CLAIMS = {
    "chart": "E_1 page for the strict units of F2[u]/u^6",
    "table": "pi_i of the strict units of F2[u]/u^{n+1} are 2-torsion with the listed ranks",
    "probe": "nonzero homology classes of ker Sq^{2n+1}/im Sq^{n+1} for n <= 15",
    "sq4i": "Sq^{4i,2i,i} is nonzero in ker Sq^{8i-3}/im Sq^{4i-1}",
    "conjecture": "ker Sq^{8k+1}/im Sq^{4k+1} vanishes on L(0)_{<8k}",
    "classify-dl": "exactly four Dyer-Lashof structures on F2[u]",
    "identity": "a(n,q) identity and the a/b recurrences",
    "burnside": "unit complexes of Steinberg summands of Burnside rings",
    "ktheory": "K-theory complexes of Steinberg summands are exact",
    "jtheory": "j-theory of Steinberg summands",
}
