"""The unstable co-Koszul complex for strict units of F2[u] and its truncations.

For the ring ``F2[u]/u^{m+1}`` with ``|u| = 2`` the complex has a class
``u^n x`` for every ``1 <= n <= m`` and every admissible monomial ``x`` of
``L(0) = A / A Sq^1``, placed at stem ``2n - |x|`` and filtration
``length(x)``.  The differential is

    d(u^n x) = u^{2n} Sq^{2n+1} x,

dropped when ``u^{2n} = 0``.  Only the summands ``u^n`` with ``u^{2n} != 0``
are cut down to ``L(0)_{<2n}``; the degree in that subscript is the internal
degree ``beta(x) = |x| - length(x)`` of the Koszul dual, so ``Sq^{i+1}`` is
the generator ``beta_i`` of degree ``i``.  ``slack=None`` switches the cut
off and gives the full page that is usually drawn as the ``E_1``-page.

Everything here is computed in the Koszul dual of the Dyer-Lashof algebra,
where ``Sq^0 = 0`` and the Adem relations preserve length, so ``d`` has
bidegree ``(-1, +1)``.  The Postnikov chart for ``g_1`` uses the classical
Steenrod algebra instead, since its differentials are actual
``k``-invariants.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .f2core import (
    F2Matrix,
    rank_kernel_image,
    span_contains,
    subquotient,
    vector_from_indices,
    vector_indices,
)
from .steenrod import (
    Convention,
    Monomial,
    SteenrodElement,
    basis,
    beta_degree,
    format_monomial,
    is_admissible,
    left_multiply,
    monomial_key,
    parse_monomial,
)

__all__ = [
    "GHM_CONVENTION",
    "Chart",
    "ChartClass",
    "CoKoszulComplex",
    "ConjectureReport",
    "E2Entry",
    "HomologySlice",
    "HomotopyTable",
    "NotBigraded",
    "ProbeReport",
    "SplitViolated",
    "WindowTooSmall",
    "adem_homology",
    "build_complex",
    "chart",
    "check_conjecture",
    "component_e2",
    "e2_page",
    "format_chain",
    "homology_probe",
    "homotopy_table",
    "odd_core",
    "postnikov_chart",
    "sq_4i_2i_i_class",
    "splitting_components",
]

GHM_CONVENTION = Convention.SQ0_IS_ZERO

Chain = tuple["ChartClass", ...]


class WindowTooSmall(ValueError):
    """A bidegree outside the window of a complex was queried."""


class SplitViolated(AssertionError):
    """A differential connects two different odd-core components."""


class NotBigraded(ValueError):
    """The differential produced a term outside the expected filtration."""


def odd_core(n: int) -> int:
    """The odd part ``k`` of ``n = k 2^j``."""
    if n < 1:
        raise ValueError("n must be positive")
    while n % 2 == 0:
        n //= 2
    return n


_CLASS_RE = re.compile(r"^\s*u\^(\d+)\.(Sq\[[\d,\s]*\])\s*$")


@dataclass(frozen=True, order=True)
class ChartClass:
    """The class ``u^n x`` with ``x`` an admissible monomial of ``L(0)``."""

    n: int
    monomial: Monomial

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("the u-exponent must be at least 1")
        m = self.monomial
        if not is_admissible(m) or any(i < 1 for i in m):
            raise ValueError(f"{format_monomial(m)} is not admissible")
        if m and m[-1] == 1:
            raise ValueError(f"{format_monomial(m)} ends in Sq^1 and is zero in L(0)")

    @property
    def degree(self) -> int:
        return sum(self.monomial)

    @property
    def stem(self) -> int:
        return 2 * self.n - self.degree

    @property
    def length(self) -> int:
        return len(self.monomial)

    @property
    def core(self) -> int:
        return odd_core(self.n)

    def label(self) -> str:
        return f"u^{self.n}.{format_monomial(self.monomial)}"

    def __str__(self) -> str:
        return self.label()

    @classmethod
    def parse(cls, text: str) -> ChartClass:
        match = _CLASS_RE.match(text)
        if match is None:
            raise ValueError(f"not a chart class: {text!r}")
        return cls(int(match.group(1)), parse_monomial(match.group(2)))


def format_chain(chain: Iterable[ChartClass]) -> str:
    """Text form of a sum of classes; ``0`` for the empty sum."""
    items = sorted(chain, key=lambda c: (c.n, monomial_key(c.monomial)))
    return " + ".join(c.label() for c in items) if items else "0"


def _max_length(degree: int) -> int:
    """An upper bound for the length of a monomial of ``L(0)`` in ``degree``."""
    length = 0
    while (1 << (length + 2)) - 2 <= degree:
        length += 1
    return length


def _image(k: int, m: Monomial, convention: Convention) -> frozenset[Monomial]:
    x = SteenrodElement(convention, frozenset([m]), quotient=True)
    return left_multiply(k, x).terms


@dataclass(frozen=True)
class E2Entry:
    dim: int
    reps: tuple[Chain, ...]


@dataclass
class CoKoszulComplex:
    """The co-Koszul complex for ``F2[u]/u^{m+1}`` (``truncation=None`` for ``F2[u]``).

    The complex is infinite, so classes are produced on demand.  ``stems``
    and ``filtrations`` (inclusive ranges) form the window where classes are
    listed and ``E_2`` may be queried; the maps in and out of a window
    bidegree are always built in full, so in-window answers are exact.  For
    the untruncated ring only the summands ``u^n`` with ``n <= n_max`` are
    listed, since each bidegree receives classes from every ``n``.
    """

    truncation: int | None
    stems: tuple[int, int]
    filtrations: tuple[int, int]
    slack: int | None = 0
    convention: Convention = GHM_CONVENTION
    n_max: int | None = None
    _cells: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        if self.truncation is not None and self.truncation < 1:
            raise ValueError("truncation must be at least 1")
        if self.truncation is None and self.n_max is None:
            raise ValueError("the untruncated complex needs n_max")
        if self.stems[0] > self.stems[1] or self.filtrations[0] > self.filtrations[1]:
            raise ValueError("empty window")
        if self.filtrations[0] < 0:
            raise ValueError("filtrations are non-negative")

    @property
    def top(self) -> int:
        """Largest u-exponent listed."""
        if self.truncation is None:
            return self.n_max  # type: ignore[return-value]
        return self.truncation if self.n_max is None else min(self.n_max, self.truncation)

    def exists(self, n: int) -> bool:
        return self.truncation is None or n <= self.truncation

    def has_differential(self, n: int) -> bool:
        return self.truncation is None or 2 * n <= self.truncation

    def in_domain(self, n: int, m: Monomial) -> bool:
        if self.slack is None or not self.has_differential(n):
            return True
        return beta_degree(m) < 2 * n + self.slack

    def in_window(self, stem: int, filtration: int) -> bool:
        return self.stems[0] <= stem <= self.stems[1] and self.filtrations[0] <= filtration <= self.filtrations[1]

    def cell(self, n: int, stem: int, filtration: int) -> tuple[Monomial, ...]:
        """Monomials ``x`` with ``u^n x`` at the given bidegree, in basis order."""
        key = (n, stem, filtration)
        hit = self._cells.get(key)
        if hit is not None:
            return hit
        degree = 2 * n - stem
        if not self.exists(n) or degree < 0 or filtration < 0:
            out: tuple[Monomial, ...] = ()
        else:
            out = tuple(
                m for m in basis(degree).monomials if len(m) == filtration and self.in_domain(n, m)
            )
        self._cells[key] = out
        return out

    def classes(self, stem: int, filtration: int) -> list[ChartClass]:
        return [ChartClass(n, m) for n in range(1, self.top + 1) for m in self.cell(n, stem, filtration)]

    def window_classes(self) -> list[ChartClass]:
        out = []
        for s in range(self.filtrations[0], self.filtrations[1] + 1):
            for a in range(self.stems[1], self.stems[0] - 1, -1):
                out.extend(self.classes(a, s))
        return out

    def d1(self, c: ChartClass) -> Chain | None:
        """``d(u^n x)`` as a sum of classes; ``None`` when ``u^{2n} = 0``."""
        if not self.has_differential(c.n):
            return None
        target = self.cell(2 * c.n, c.stem - 1, c.length + 1)
        allowed = set(target)
        out = []
        for t in _image(2 * c.n + 1, c.monomial, self.convention):
            if len(t) != c.length + 1:
                raise NotBigraded(f"d({c}) has the term {format_monomial(t)} of the wrong length")
            if t not in allowed:
                raise ValueError(f"d({c}) leaves the complex through {format_monomial(t)}")
            out.append(ChartClass(2 * c.n, t))
        return tuple(sorted(out, key=lambda x: monomial_key(x.monomial)))

    def d1_matrix(self, n: int, stem: int, filtration: int) -> F2Matrix:
        """Matrix of ``d`` from the ``u^n`` cell at ``(stem, filtration)`` to the ``u^{2n}`` cell."""
        src = self.cell(n, stem, filtration)
        tgt = self.cell(2 * n, stem - 1, filtration + 1) if self.has_differential(n) else ()
        index = {m: i for i, m in enumerate(tgt)}
        columns = []
        for m in src:
            image = self.d1(ChartClass(n, m))
            columns.append(0 if image is None else vector_from_indices(index[c.monomial] for c in image))
        return F2Matrix.from_columns(len(tgt), columns)

    def slice_homology(self, n: int, stem: int, filtration: int) -> tuple[int, list[Chain]]:
        """Homology at the ``u^n`` part of one bidegree."""
        src = self.cell(n, stem, filtration)
        if not src:
            return 0, []
        _, kernel, _ = rank_kernel_image(self.d1_matrix(n, stem, filtration))
        image: list[int] = []
        if n % 2 == 0 and self.has_differential(n // 2):
            _, _, image = rank_kernel_image(self.d1_matrix(n // 2, stem + 1, filtration - 1))
        dim, reps = subquotient(kernel, image)
        return dim, [tuple(ChartClass(n, src[i]) for i in vector_indices(v)) for v in reps]

    def e2(self, stem: int, filtration: int) -> E2Entry:
        if not self.in_window(stem, filtration):
            raise WindowTooSmall(f"bidegree ({stem}, {filtration}) is outside the window")
        dim, reps = 0, []
        for n in range(1, self.top + 1):
            d, r = self.slice_homology(n, stem, filtration)
            dim += d
            reps.extend(r)
        return E2Entry(dim, tuple(reps))

    def check_d_squared(self) -> bool:
        for c in self.window_classes():
            image = self.d1(c)
            if not image:
                continue
            acc: set[ChartClass] = set()
            for t in image:
                acc.symmetric_difference_update(self.d1(t) or ())
            if acc:
                return False
        return True


def build_complex(
    m: int | None,
    stem_range: tuple[int, int],
    filtration_max: int,
    *,
    slack: int | None = 0,
    convention: Convention = GHM_CONVENTION,
    n_max: int | None = None,
) -> CoKoszulComplex:
    """Co-Koszul complex for ``F2[u]/u^{m+1}`` (or ``F2[u]`` when ``m`` is ``None``)."""
    return CoKoszulComplex(m, tuple(stem_range), (0, filtration_max), slack, convention, n_max)


def e2_page(c: CoKoszulComplex) -> dict[tuple[int, int], E2Entry]:
    """``E_2`` at every window bidegree, listed by filtration then decreasing stem."""
    out = {}
    for s in range(c.filtrations[0], c.filtrations[1] + 1):
        for a in range(c.stems[1], c.stems[0] - 1, -1):
            out[(a, s)] = c.e2(a, s)
    return out


def splitting_components(c: CoKoszulComplex) -> dict[int, list[ChartClass]]:
    """Window classes grouped by the odd core of their u-exponent.

    Raises:
        SplitViolated: if some differential lands in another component.
    """
    out: dict[int, list[ChartClass]] = {}
    for cls in c.window_classes():
        for t in c.d1(cls) or ():
            if t.core != cls.core:
                raise SplitViolated(f"d({cls}) reaches {t}")
        out.setdefault(cls.core, []).append(cls)
    return dict(sorted(out.items()))


def component_e2(c: CoKoszulComplex, core: int, stem: int, filtration: int) -> int:
    """Dimension of ``E_2`` at one bidegree restricted to a single component."""
    if not c.in_window(stem, filtration):
        raise WindowTooSmall(f"bidegree ({stem}, {filtration}) is outside the window")
    return sum(c.slice_homology(n, stem, filtration)[0] for n in range(1, c.top + 1) if odd_core(n) == core)


# --- charts --------------------------------------------------------------------


@dataclass
class Chart:
    """A rendered ``E_1`` page with its ``d_1`` and the resulting ``E_2``.

    ``d1`` maps each class to its image, or to ``None`` when the differential
    is dropped because its target power of ``u`` vanishes.
    """

    kind: str
    truncation: int | None
    stems: tuple[int, int]
    filtrations: tuple[int, int]
    slack: int | None
    convention: Convention
    classes: list[tuple[int, int, ChartClass]]
    d1: dict[ChartClass, Chain | None]
    e2: dict[tuple[int, int], E2Entry]

    def arrows(self) -> list[tuple[ChartClass, Chain]]:
        return [(c, img) for _, _, c in self.classes if (img := self.d1[c])]

    def rows(self) -> list[tuple[int, int, str, str]]:
        out = []
        for a, s, c in self.classes:
            img = self.d1[c]
            out.append((a, s, c.label(), "-" if img is None else format_chain(img)))
        return out

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "truncation": self.truncation,
            "stems": list(self.stems),
            "filtrations": list(self.filtrations),
            "slack": self.slack,
            "convention": self.convention.value,
            "classes": [
                {"stem": a, "filtration": s, "class": label, "d1_target": d} for a, s, label, d in self.rows()
            ],
            "e2": [
                {"stem": a, "filtration": s, "dim": e.dim, "reps": [format_chain(r) for r in e.reps]}
                for (a, s), e in self.e2.items()
                if e.dim
            ],
        }

    def grid(self) -> str:
        """Plain-text picture: one row per filtration (top first), one column per stem."""
        cells: dict[tuple[int, int], list[str]] = {}
        for a, s, c in self.classes:
            cells.setdefault((a, s), []).append(c.label())
        width = max([len(x) for v in cells.values() for x in v] + [4]) + 2
        lines = []
        for s in range(self.filtrations[1], self.filtrations[0] - 1, -1):
            depth = max([len(cells.get((a, s), [])) for a in range(self.stems[0], self.stems[1] + 1)] + [1])
            for k in range(depth):
                head = f"{s:>3} |" if k == 0 else "    |"
                row = []
                for a in range(self.stems[1], self.stems[0] - 1, -1):
                    entries = cells.get((a, s), [])
                    row.append((entries[k] if k < len(entries) else ("." if k == 0 else "")).ljust(width))
                lines.append(head + "".join(row).rstrip())
        lines.append("    +" + "-" * (width * (self.stems[1] - self.stems[0] + 1)))
        lines.append("     " + "".join(str(a).ljust(width) for a in range(self.stems[1], self.stems[0] - 1, -1)).rstrip())
        return "\n".join(lines)


def chart(
    truncation: int,
    stems: tuple[int, int] | None = None,
    filtrations: tuple[int, int] | None = None,
    *,
    slack: int | None = None,
    convention: Convention = GHM_CONVENTION,
) -> Chart:
    """The ``E_1``-page of the truncated complex with ``d_1`` and ``E_2``.

    By default the full page is drawn (``slack=None``) on stems
    ``-1 .. 2 * truncation`` and every filtration that occurs there.
    """
    if stems is None:
        stems = (-1, 2 * truncation)
    if filtrations is None:
        filtrations = (0, _max_length(2 * truncation - stems[0]))
    c = CoKoszulComplex(truncation, stems, filtrations, slack, convention)
    classes = [(cl.stem, cl.length, cl) for cl in c.window_classes()]
    d1 = {cl: c.d1(cl) for _, _, cl in classes}
    return Chart("ghm", truncation, stems, filtrations, slack, convention, classes, d1, e2_page(c))


def postnikov_chart(m: int, stems: tuple[int, int] | None = None) -> Chart:
    """The modified Atiyah-Hirzebruch chart for ``g_1/u^m`` (``m`` a power of two).

    Classes are ``u^{2^j} x`` for ``2^j < m`` and ``x`` in ``L(0)``, at stem
    ``2^{j+1} - |x|`` and filtration ``j``.  The ``d_1`` comes from the
    Postnikov ``k``-invariants, ``d(u^{2^j} x) = u^{2^{j+1}} Sq^{2^{j+1}+1} x``,
    computed in the classical Steenrod algebra.
    """
    if m < 2 or m & (m - 1):
        raise ValueError("m must be a power of two, at least 2")
    if stems is None:
        stems = (-1, m)
    convention = Convention.SQ0_IS_ONE
    top = m.bit_length() - 2  # largest j with 2^j < m
    cells: dict[tuple[int, int], tuple[Monomial, ...]] = {}

    def cell(j: int, stem: int) -> tuple[Monomial, ...]:
        if j < 0 or j > top:
            return ()
        if (j, stem) not in cells:
            cells[(j, stem)] = basis((2 << j) - stem).monomials if (2 << j) - stem >= 0 else ()
        return cells[(j, stem)]

    def diff(j: int, x: Monomial) -> Chain | None:
        if j + 1 > top:
            return None
        n = 1 << j
        image = _image(2 * n + 1, x, convention)
        return tuple(ChartClass(2 * n, t) for t in sorted(image, key=monomial_key))

    def matrix(j: int, stem: int) -> F2Matrix:
        src, tgt = cell(j, stem), cell(j + 1, stem - 1)
        index = {x: i for i, x in enumerate(tgt)}
        cols = []
        for x in src:
            image = diff(j, x)
            cols.append(0 if image is None else vector_from_indices(index[c.monomial] for c in image))
        return F2Matrix.from_columns(len(tgt), cols)

    classes, d1, e2 = [], {}, {}
    for j in range(0, top + 1):
        for a in range(stems[1], stems[0] - 1, -1):
            src = cell(j, a)
            for x in src:
                c = ChartClass(1 << j, x)
                classes.append((a, j, c))
                d1[c] = diff(j, x)
            _, kernel, _ = rank_kernel_image(matrix(j, a))
            image = rank_kernel_image(matrix(j - 1, a + 1))[2] if j > 0 else []
            dim, reps = subquotient(kernel, image)
            e2[(a, j)] = E2Entry(dim, tuple(tuple(ChartClass(1 << j, src[i]) for i in vector_indices(v)) for v in reps))
    return Chart("postnikov", m, stems, (0, top), None, convention, classes, d1, e2)


# --- homotopy table ---------------------------------------------------------------


@dataclass
class HomotopyTable:
    """``dim pi_i`` of the strict units of ``F2[u]/u^{m+1}`` from ``E_2``.

    Two collapse certificates are recorded for each ``m``.  ``collapse[m]``
    is plain sparsity: no nonzero class of non-negative stem has a nonzero
    bidegree ``(a - 1, s + r)``, ``r >= 2``, to hit.  ``collapse_split[m]``
    applies the same test inside each odd-core component, since the spectral
    sequence splits along them, and accepts outright every component that is
    a single summand ``u^k`` with no ``d_1`` (its ``E_1`` already has the
    size of the abutment).  ``obstructions`` and ``split_obstructions`` list
    the offending pairs of bidegrees.
    """

    m_max: int
    slack: int | None
    dims: dict[int, list[int]]
    collapse: dict[int, bool]
    obstructions: dict[int, list[tuple[tuple[int, int], tuple[int, int]]]]
    collapse_split: dict[int, bool]
    split_obstructions: dict[int, list[tuple[int, tuple[int, int], tuple[int, int]]]]
    e2: dict[int, dict[tuple[int, int], int]]

    def to_json(self) -> dict:
        return {
            "m_max": self.m_max,
            "slack": self.slack,
            "rows": [
                {
                    "truncation": m,
                    "dims": self.dims[m],
                    "collapse_sparsity": self.collapse[m],
                    "collapse_split": self.collapse_split[m],
                    "obstructions": [[list(a), list(b)] for a, b in self.obstructions[m]],
                }
                for m in sorted(self.dims)
            ],
        }


def _sparsity_obstructions(page: dict[tuple[int, int], int], fmax: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    blocked = []
    for (a, s), dim in sorted(page.items()):
        if a < 0 or not dim:
            continue
        for t in range(s + 2, fmax + 1):
            if page.get((a - 1, t)):
                blocked.append(((a, s), (a - 1, t)))
    return blocked


def homotopy_table(m_max: int, *, slack: int | None = 0, convention: Convention = GHM_CONVENTION) -> HomotopyTable:
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    if m_max > 8:
        warnings.warn("collapse is only certified by sparsity; check the collapse flags", stacklevel=2)
    dims, collapse, obstructions, pages = {}, {}, {}, {}
    collapse_split, split_obstructions = {}, {}
    for m in range(1, m_max + 1):
        fmax = _max_length(2 * m + 1)
        c = CoKoszulComplex(m, (-1, 2 * m), (0, fmax), slack, convention)
        bidegrees = [(a, s) for a in range(-1, 2 * m + 1) for s in range(0, fmax + 1)]
        page = {b: c.e2(*b).dim for b in bidegrees}
        dims[m] = [sum(page[(i, s)] for s in range(fmax + 1)) for i in range(0, 2 * m + 1)]
        obstructions[m] = _sparsity_obstructions(page, fmax)
        collapse[m] = not obstructions[m]
        split = []
        for k in range(1, m + 1, 2):
            if 2 * k > m:
                continue  # a lone summand without d_1
            comp = {b: component_e2(c, k, *b) for b in bidegrees}
            split.extend((k, src, tgt) for src, tgt in _sparsity_obstructions(comp, fmax))
        collapse_split[m] = not split
        split_obstructions[m] = split
        pages[m] = {k: v for k, v in page.items() if v}
    return HomotopyTable(m_max, slack, dims, collapse, obstructions, collapse_split, split_obstructions, pages)


# --- Adem homology ker Sq^{2n+1} / im Sq^{n+1} ------------------------------------


@dataclass(frozen=True)
class HomologySlice:
    """``ker Sq^{2n+1} / im Sq^{n+1}`` in one degree of ``A`` or ``A / A Sq^1``.

    With ``restricted`` the cycles are taken in ``L(0)_{<2n}`` and the
    boundaries come from ``L(0)_{<n}``.
    """

    n: int
    degree: int
    restricted: bool
    dim: int
    reps: tuple[SteenrodElement, ...]


def _space(degree: int, quotient: bool, bound: int | None) -> tuple[Monomial, ...]:
    monos = basis(degree, quotient).monomials
    if bound is None:
        return monos
    return tuple(m for m in monos if beta_degree(m) < bound)


def _mult_matrix(
    k: int, src: Sequence[Monomial], tgt: Sequence[Monomial], quotient: bool, convention: Convention
) -> F2Matrix:
    index = {m: i for i, m in enumerate(tgt)}
    cols = []
    for m in src:
        image = left_multiply(k, SteenrodElement(convention, frozenset([m]), quotient=quotient)).terms
        try:
            cols.append(vector_from_indices(index[t] for t in image))
        except KeyError as exc:
            raise ValueError(f"Sq^{k} {format_monomial(m)} leaves the target space") from exc
    return F2Matrix.from_columns(len(tgt), cols)


def adem_homology(
    n: int,
    degree: int,
    *,
    restricted: bool = False,
    quotient: bool = True,
    convention: Convention = Convention.SQ0_IS_ONE,
) -> HomologySlice:
    if n < 1:
        raise ValueError("n must be positive")
    src = _space(degree, quotient, 2 * n if restricted else None)
    tgt = _space(degree + 2 * n + 1, quotient, None)
    prev = _space(degree - n - 1, quotient, n if restricted else None) if degree >= n + 1 else ()
    _, kernel, _ = rank_kernel_image(_mult_matrix(2 * n + 1, src, tgt, quotient, convention))
    image: list[int] = []
    if prev:
        _, _, image = rank_kernel_image(_mult_matrix(n + 1, prev, src, quotient, convention))
    dim, reps = subquotient(kernel, image)
    elements = tuple(
        SteenrodElement(convention, frozenset(src[i] for i in vector_indices(v)), quotient) for v in reps
    )
    return HomologySlice(n, degree, restricted, dim, elements)


def _class_status(
    n: int, m: Monomial, *, restricted: bool, quotient: bool, convention: Convention
) -> tuple[bool, bool]:
    """``(is_cycle, is_nonzero_class)`` for a single monomial."""
    degree = sum(m)
    src = _space(degree, quotient, 2 * n if restricted else None)
    if m not in src:
        return False, False
    tgt = _space(degree + 2 * n + 1, quotient, None)
    prev = _space(degree - n - 1, quotient, n if restricted else None) if degree >= n + 1 else ()
    d = _mult_matrix(2 * n + 1, src, tgt, quotient, convention)
    v = 1 << src.index(m)
    if d.apply(v):
        return False, False
    if not prev:
        return True, True
    _, _, image = rank_kernel_image(_mult_matrix(n + 1, prev, src, quotient, convention))
    return True, not span_contains(image, v)


def sq_4i_2i_i_class(i: int, *, quotient: bool = False) -> tuple[bool, bool]:
    """Whether ``Sq^{4i,2i,i}`` is a cycle for ``Sq^{8i-3}`` and outside ``im Sq^{4i-1}``.

    Computed in the full Steenrod algebra by default; in ``A / A Sq^1`` the
    element is zero for ``i = 1``.
    """
    if i < 1:
        raise ValueError("i must be positive")
    m = (4 * i, 2 * i, i)
    if quotient and i == 1:
        return False, False
    return _class_status(4 * i - 2, m, restricted=False, quotient=quotient, convention=Convention.SQ0_IS_ONE)


@dataclass
class ProbeReport:
    """Homology of ``Sq^{2n+1}`` modulo ``Sq^{n+1}`` on ``A / A Sq^1``, both readings."""

    n: int
    degrees: tuple[int, int]
    restricted: dict[int, HomologySlice]
    full: dict[int, HomologySlice]
    checks: dict[str, dict[str, bool]]

    def nonzero_degrees(self, restricted: bool) -> list[int]:
        data = self.restricted if restricted else self.full
        return [d for d, h in data.items() if h.dim]

    def to_json(self) -> dict:
        def dump(data: dict[int, HomologySlice]) -> list[dict]:
            return [{"degree": d, "dim": h.dim, "reps": [str(r) for r in h.reps]} for d, h in data.items() if h.dim]

        return {
            "n": self.n,
            "degrees": list(self.degrees),
            "restricted": dump(self.restricted),
            "untruncated": dump(self.full),
            "monomial_checks": self.checks,
        }


def homology_probe(
    n: int,
    degrees: tuple[int, int] | None = None,
    monomials: Iterable[Monomial] = (),
    *,
    convention: Convention = Convention.SQ0_IS_ONE,
) -> ProbeReport:
    """``ker Sq^{2n+1} / im Sq^{n+1}`` on ``A / A Sq^1`` per degree.

    Both the restricted reading (cycles in ``L(0)_{<2n}``) and the
    untruncated one are reported.  Each monomial in ``monomials`` is checked
    for being a cycle that represents a nonzero class under either reading.
    """
    if n < 2 or n % 2:
        raise ValueError("n must be even and at least 2")
    if degrees is None:
        degrees = (0, 3 * n)
    restricted, full = {}, {}
    for d in range(degrees[0], degrees[1] + 1):
        restricted[d] = adem_homology(n, d, restricted=True, convention=convention)
        full[d] = adem_homology(n, d, restricted=False, convention=convention)
    checks = {}
    for m in monomials:
        r_cyc, r_nz = _class_status(n, tuple(m), restricted=True, quotient=True, convention=convention)
        f_cyc, f_nz = _class_status(n, tuple(m), restricted=False, quotient=True, convention=convention)
        checks[format_monomial(m)] = {
            "restricted_cycle": r_cyc,
            "restricted_nonzero": r_nz,
            "untruncated_cycle": f_cyc,
            "untruncated_nonzero": f_nz,
        }
    return ProbeReport(n, degrees, restricted, full, checks)


@dataclass
class ConjectureReport:
    """``dim ker Sq^{8k+1} / im Sq^{4k+1}`` on ``A / A Sq^1`` per degree.

    ``restricted`` is the ``u^{4k}`` summand of ``E_2``, with cycles in
    ``L(0)_{<8k}``; ``full`` is the unrestricted subquotient.
    """

    k: int
    degree_cap: int
    restricted: dict[int, int]
    full: dict[int, int]

    def holds(self, restricted: bool = True) -> bool:
        data = self.restricted if restricted else self.full
        return not any(data.values())

    def failures(self, restricted: bool = True) -> list[int]:
        data = self.restricted if restricted else self.full
        return [d for d, v in data.items() if v]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "degree_cap": self.degree_cap,
            "holds_restricted": self.holds(True),
            "holds_untruncated": self.holds(False),
            "nonzero_restricted": {str(d): v for d, v in self.restricted.items() if v},
            "nonzero_untruncated": {str(d): v for d, v in self.full.items() if v},
        }


def check_conjecture(k: int, degree_cap: int | None = None) -> ConjectureReport:
    """Test ``ker Sq^{8k+1} = im Sq^{4k+1}`` on ``A / A Sq^1`` in degrees ``<= degree_cap``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    cap = 8 * k + 1 if degree_cap is None else degree_cap
    restricted, full = {}, {}
    for d in range(0, cap + 1):
        if k == 0:
            # both operations are Sq^1; L(0)_{<0} is empty
            full[d] = _sq1_homology(d)
            restricted[d] = 0
            continue
        restricted[d] = adem_homology(4 * k, d, restricted=True).dim
        full[d] = adem_homology(4 * k, d, restricted=False).dim
    return ConjectureReport(k, cap, restricted, full)


def _sq1_homology(degree: int) -> int:
    """``ker Sq^1 / im Sq^1`` on ``A / A Sq^1`` in one degree."""
    src = basis(degree).monomials
    tgt = basis(degree + 1).monomials
    prev = basis(degree - 1).monomials if degree >= 1 else ()
    _, kernel, _ = rank_kernel_image(_mult_matrix(1, src, tgt, True, Convention.SQ0_IS_ONE))
    image = rank_kernel_image(_mult_matrix(1, prev, src, True, Convention.SQ0_IS_ONE))[2] if prev else []
    return subquotient(kernel, image)[0]
