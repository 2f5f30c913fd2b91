"""Character rings of elementary abelian p-groups, Steinberg summands, K- and j-theory.

``R(V_s) = Z_p[V_s^]`` has the characters ``chi_v`` (``v`` in ``F_p^s``) as a
basis, with ``chi_v(w) = zeta^{v.w}``.  ``GL(V_s)`` acts on the right by
``chi_v . g = chi_{g^T v}``, and the Steinberg idempotent acts by

    chi_v . e_s = [GL_s:U_s]^{-1} sum_{b, sigma} sgn(sigma) chi_{sigma^T b^T v}.

The transfer ``R(V_s) -> R(V_{s+1})`` is induction along ``V_s`` included as
the last ``s`` coordinates: ``chi_v -> sum_a chi_{(a, v)}``.

j-theory enters through the fibre sequence of ``psi^l - 1``.  For a space
with vanishing odd K-theory such as ``BV_{s+}``, ``[BV_{s+}, Omega^i j]`` is
the kernel of ``l^{-t} psi^l - 1`` on ``R(V_s)`` when ``i = 2t`` and its
cokernel when ``i = 2t - 1``.  In degree ``i = 0`` the kernel is taken on
rank-zero virtual characters.

The ``L(s)`` summands are handled through the splitting
``M(s) = L(s) v L(s-1)``.  For ``s = 1`` this is ``B Sigma_{p+} = B Sigma_p v S^0``,
with the ``S^0`` summand given by constants (inflation from the trivial
group).  For ``s >= 2`` the ``L``-groups are read off by cancelling ``L(s-1)``
from ``M(s)``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .burnside import _permutations, _primitive_root, borel_order, steinberg_index
from .padic import (
    DEFAULT_PRECISION,
    HomologyGroup,
    NotAGenerator,
    ZpLattice,
    default_generator,
    is_topological_generator,
    lattice_homology,
    nu,
    smith_form,
)

__all__ = [
    "CharElem",
    "GroupDescription",
    "JComplexReport",
    "KTheoryReport",
    "NotAGenerator",
    "alpha",
    "beta",
    "character_vectors",
    "determinant_unit_factor",
    "equivalence_classes",
    "gamma",
    "j_complex_homology",
    "j_groups",
    "k0_rank",
    "ktheory_complex_check",
    "line_block_determinant_valuation",
    "psi",
    "psi_l_kernel",
    "steinberg_add",
    "transfer_K",
]

Vector = tuple[int, ...]


@lru_cache(maxsize=None)
def character_vectors(p: int, s: int) -> tuple[Vector, ...]:
    """``F_p^s`` in lexicographic order; position ``k`` indexes ``chi_v``."""
    return tuple(itertools.product(range(p), repeat=s))


@lru_cache(maxsize=None)
def _vindex(p: int, s: int) -> dict[Vector, int]:
    return {v: i for i, v in enumerate(character_vectors(p, s))}


@dataclass(frozen=True)
class CharElem:
    """A virtual character ``sum c_v chi_v`` with coefficients in ``Z/p^N``."""

    p: int
    s: int
    N: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        mod = self.p**self.N
        object.__setattr__(self, "coeffs", tuple(c % mod for c in self.coeffs))
        if len(self.coeffs) != self.p**self.s:
            raise ValueError("wrong number of coefficients")

    @classmethod
    def zero(cls, p: int, s: int, N: int = DEFAULT_PRECISION) -> CharElem:
        return cls(p, s, N, (0,) * p**s)

    @classmethod
    def chi(cls, p: int, v: Sequence[int], N: int = DEFAULT_PRECISION) -> CharElem:
        s = len(v)
        c = [0] * p**s
        c[_vindex(p, s)[tuple(x % p for x in v)]] = 1
        return cls(p, s, N, tuple(c))

    @classmethod
    def from_dict(cls, p: int, s: int, terms: dict[Vector, int], N: int = DEFAULT_PRECISION) -> CharElem:
        c = [0] * p**s
        idx = _vindex(p, s)
        for v, a in terms.items():
            c[idx[tuple(x % p for x in v)]] += a
        return cls(p, s, N, tuple(c))

    def coeff(self, v: Sequence[int]) -> int:
        return self.coeffs[_vindex(self.p, self.s)[tuple(v)]]

    def _check(self, other: CharElem) -> int:
        if (self.p, self.s) != (other.p, other.s):
            raise ValueError("characters of different groups")
        return min(self.N, other.N)

    def __add__(self, other: CharElem) -> CharElem:
        n = self._check(other)
        return CharElem(self.p, self.s, n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: CharElem) -> CharElem:
        n = self._check(other)
        return CharElem(self.p, self.s, n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, k: int) -> CharElem:
        return CharElem(self.p, self.s, self.N, tuple(k * a for a in self.coeffs))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharElem):
            return NotImplemented
        if (self.p, self.s) != (other.p, other.s):
            return False
        m = self.p ** min(self.N, other.N)
        return all((a - b) % m == 0 for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.p, self.s, self.coeffs))

    def rank(self) -> int:
        """Virtual dimension mod ``p^N``."""
        return sum(self.coeffs) % self.p**self.N

    def act(self, g: Sequence[Sequence[int]]) -> CharElem:
        """Right action ``chi_v . g = chi_{g^T v}``."""
        vecs = character_vectors(self.p, self.s)
        idx = _vindex(self.p, self.s)
        out = [0] * len(vecs)
        for k, c in enumerate(self.coeffs):
            if c:
                v = vecs[k]
                w = tuple(sum(g[j][i] * v[j] for j in range(self.s)) % self.p for i in range(self.s))
                out[idx[w]] += c
        return CharElem(self.p, self.s, self.N, tuple(out))

    def __str__(self) -> str:
        vecs = character_vectors(self.p, self.s)
        mod = self.p**self.N
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                c2 = c - mod if c > mod // 2 else c
                terms.append(f"{c2}*chi{vecs[k]}")
        return " + ".join(terms) if terms else "0"


def psi(x: CharElem, l: int) -> CharElem:
    """The Adams operation ``chi_v -> chi_{l v}``."""
    return x.act([[l if i == j else 0 for j in range(x.s)] for i in range(x.s)])


def _lower_generators(p: int, s: int) -> list[list[list[int]]]:
    # b^T for b in the upper Borel: lower triangular matrices
    lam = _primitive_root(p)
    gens = []
    if p > 2:
        for i in range(s):
            gens.append([[lam if (a == b == i) else int(a == b) for b in range(s)] for a in range(s)])
    for i in range(s):
        for j in range(i):
            gens.append([[int(a == b) + int(a == i and b == j) for b in range(s)] for a in range(s)])
    return gens


@lru_cache(maxsize=None)
def _borel_orbit(p: int, s: int, v: Vector) -> tuple[Vector, ...]:
    """Orbit of ``v`` under ``{b^T : b in B_s}``."""
    gens = _lower_generators(p, s)
    seen = {v}
    frontier = [v]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                u = tuple(sum(g[a][b] * w[b] for b in range(s)) % p for a in range(s))
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return tuple(sorted(seen))


def _signed_multiset(p: int, s: int, v: Vector) -> Counter:
    """The multiset ``{(sgn sigma, sigma^T b^T v)}`` over ``B_s x Sigma_s``."""
    orbit = _borel_orbit(p, s, v)
    mult = borel_order(s, p) // len(orbit)
    out: Counter = Counter()
    for perm, sign in _permutations(s):
        for w in orbit:
            u = tuple(sum(perm[j][i] * w[j] for j in range(s)) % p for i in range(s))
            out[(sign, u)] += mult
    return out


@lru_cache(maxsize=None)
def _steinberg_table(p: int, s: int) -> tuple[dict[int, int], ...]:
    """Signed integer coefficients of ``[GL:U] chi_v . e_s`` for every ``v``."""
    idx = _vindex(p, s)
    rows = []
    for v in character_vectors(p, s):
        acc: dict[int, int] = {}
        for (sign, u), m in _signed_multiset(p, s, v).items():
            k = idx[u]
            acc[k] = acc.get(k, 0) + sign * m
        rows.append({k: c for k, c in acc.items() if c})
    return tuple(rows)


def equivalence_classes(p: int, s: int) -> list[list[Vector]]:
    """Classes of ``v ~ v'`` when their signed multisets ``{(-1)^sigma sigma^T b^T v}`` agree."""
    groups: dict[frozenset, list[Vector]] = {}
    for v in character_vectors(p, s):
        key = frozenset(_signed_multiset(p, s, v).items())
        groups.setdefault(key, []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def steinberg_add(x: CharElem) -> CharElem:
    """The additive Steinberg idempotent ``x -> x . e_s``."""
    if x.s > 4:
        raise ValueError("Steinberg action implemented for s <= 4")
    table = _steinberg_table(x.p, x.s)
    mod = x.p**x.N
    inv = pow(steinberg_index(x.s, x.p), -1, mod)
    out = [0] * len(x.coeffs)
    for k, c in enumerate(x.coeffs):
        if c:
            for j, a in table[k].items():
                out[j] += c * a
    return CharElem(x.p, x.s, x.N, tuple(o * inv for o in out))


def alpha(p: int, N: int = DEFAULT_PRECISION) -> CharElem:
    """``alpha = chi_0`` in ``R(V_1)``."""
    return CharElem.chi(p, (0,), N)


def beta(p: int, N: int = DEFAULT_PRECISION) -> CharElem:
    """``beta = sum_{b != 0} chi_b`` in ``R(V_1)``."""
    return CharElem.from_dict(p, 1, {(b,): 1 for b in range(1, p)}, N)


def gamma(p: int, N: int = DEFAULT_PRECISION) -> CharElem:
    """``gamma = sum_{b != 0} (chi_{(b,0)} - chi_{(0,b)})`` in ``R(V_2)``."""
    terms: dict[Vector, int] = {}
    for b in range(1, p):
        terms[(b, 0)] = 1
        terms[(0, b)] = -1
    return CharElem.from_dict(p, 2, terms, N)


def transfer_K(x: CharElem, apply_steinberg: bool = True) -> CharElem:
    """Induction ``R(V_s) -> R(V_{s+1})``, ``chi_v -> sum_a chi_{(a, v)}``, then ``e_{s+1}``."""
    p, s = x.p, x.s
    vecs = character_vectors(p, s)
    idx = _vindex(p, s + 1)
    out = [0] * p ** (s + 1)
    for k, c in enumerate(x.coeffs):
        if c:
            for a in range(p):
                out[idx[(a,) + vecs[k]]] += c
    y = CharElem(p, s + 1, x.N, tuple(out))
    return steinberg_add(y) if apply_steinberg else y


def _basis_chars(p: int, s: int, N: int) -> list[CharElem]:
    return [CharElem.chi(p, v, N) for v in character_vectors(p, s)]


def _image_lattice(p: int, s: int, N: int, elems: Sequence[CharElem]) -> ZpLattice:
    return ZpLattice.span(p, N, p**s, [e.coeffs for e in elems])


def k0_rank(s: int, p: int, N: int = DEFAULT_PRECISION) -> tuple[int, ZpLattice]:
    """Rank of ``K^0 M(s) = R(V_s) . e_s`` and a lattice basis of it."""
    if s > 4:
        raise ValueError("s <= 4 supported")
    lat = _image_lattice(p, s, N, [steinberg_add(c) for c in _basis_chars(p, s, N)])
    return lat.rank, lat


# ---------------------------------------------------------------------------
# Group descriptions and cancellation


@dataclass(frozen=True)
class GroupDescription:
    """``Z_p^free`` plus cyclic ``Z/p^e`` summands, ``e`` in ``torsion`` (sorted)."""

    p: int
    free: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(sorted(e for e in self.torsion if e > 0)))

    def is_zero(self) -> bool:
        return self.free == 0 and not self.torsion

    def minus(self, other: GroupDescription) -> GroupDescription:
        """Cancel a direct summand (Krull-Schmidt for finitely generated ``Z_p``-modules)."""
        if other.free > self.free:
            raise ValueError(f"{other} is not a summand of {self}")
        rest = list(self.torsion)
        for e in other.torsion:
            if e not in rest:
                raise ValueError(f"{other} is not a summand of {self}")
            rest.remove(e)
        return GroupDescription(self.p, self.free - other.free, tuple(rest))

    def __str__(self) -> str:
        parts = [f"Z_{self.p}"] * self.free + [f"Z/{self.p**e}" for e in self.torsion]
        return " x ".join(parts) if parts else "0"


def _as_description(h: HomologyGroup) -> GroupDescription:
    return GroupDescription(h.p, h.free, h.torsion)


def _cancel_chain(ms: Sequence[GroupDescription]) -> list[GroupDescription]:
    """``L(s)`` from ``M(s) = L(s) + L(s-1)``, starting from ``L(0) = M(0)``."""
    out = [ms[0]]
    for m in ms[1:]:
        out.append(m.minus(out[-1]))
    return out


# ---------------------------------------------------------------------------
# K-theory


@dataclass
class KTheoryReport:
    p: int
    N: int
    ranks_M: list[int]
    ranks_L: list[int]
    transfer_images: dict[str, str]
    first_map: list[int]
    second_map: list[int]
    homology_M: list[str]
    homology_L: list[str]
    composite_zero: bool
    exact_M: bool
    exact_L: bool

    @property
    def exact(self) -> bool:
        return self.exact_M and self.exact_L and self.composite_zero

    def to_json(self) -> dict:
        return {
            "prime": self.p,
            "precision": self.N,
            "ranks_M": self.ranks_M,
            "ranks_L": self.ranks_L,
            "transfer_images": self.transfer_images,
            "first_map": self.first_map,
            "second_map": self.second_map,
            "homology_M": self.homology_M,
            "homology_L": self.homology_L,
            "composite_zero": self.composite_zero,
            "exact": self.exact,
        }


def _coordinate_in(x: CharElem, gen: CharElem) -> int:
    """The scalar ``c`` with ``x = c gen``; raises if ``x`` is not a multiple of ``gen``."""
    mod = x.p ** min(x.N, gen.N)
    k = next(i for i, g in enumerate(gen.coeffs) if g % x.p)
    c = x.coeffs[k] * pow(gen.coeffs[k], -1, mod) % mod
    if gen.scale(c) != x:
        raise ValueError(f"{x} is not a multiple of {gen}")
    return c


def _pretty(c: int, p: int, N: int) -> str:
    """Recognise ``c`` as a small fraction ``a / b`` modulo ``p^N``."""
    mod = p**N
    for b in range(1, 4 * p):
        if b % p == 0:
            continue
        a = c * b % mod
        if a > mod // 2:
            a -= mod
        if abs(a) < 4 * p:
            return str(a) if b == 1 else f"{a}/{b}"
    return str(c)


def ktheory_complex_check(p: int, N: int = 10) -> KTheoryReport:
    """The complexes ``0 -> K^0 M(0) -> K^0 M(1) -> K^0 M(2) -> 0`` and ``0 -> K^0 L(0) -> K^0 L(1) -> 0``."""
    one = CharElem.chi(p, (), N)
    a, b, g = alpha(p, N), beta(p, N), gamma(p, N)
    g_img = steinberg_add(g)
    if g_img != g:
        raise AssertionError("gamma is not fixed by e_2")
    t1 = transfer_K(one)
    ta, tb = transfer_K(a), transfer_K(b)
    # coordinates: t1 = x alpha + y beta
    x, y = t1.coeff((0,)), t1.coeff((1,))
    if a.scale(x) + b.scale(y) != t1:
        raise AssertionError("transfer of 1 is not in span(alpha, beta)")
    ca, cb = _coordinate_in(ta, g), _coordinate_in(tb, g)
    ranks_M = [k0_rank(s, p, N)[0] for s in range(4)]
    d0 = [[x], [y]]
    d1 = [[ca, cb]]
    homology = lattice_homology(p, N, [1, 2, 1], [d0, d1])
    composite = (ca * x + cb * y) % p**N == 0
    ms = [GroupDescription(p, r) for r in ranks_M]
    ls = _cancel_chain(ms)
    # L(1) = K^0 M(1) / (constants); the map from L(0) is the transfer modulo alpha
    l_map = [[y]]
    homology_L = lattice_homology(p, N, [ls[0].free, ls[1].free], [l_map])
    return KTheoryReport(
        p=p,
        N=N,
        ranks_M=ranks_M,
        ranks_L=[l.free for l in ls],
        transfer_images={
            "1": f"{_pretty(x, p, N)}*alpha + {_pretty(y, p, N)}*beta",
            "alpha": f"{_pretty(ca, p, N)}*gamma",
            "beta": f"{_pretty(cb, p, N)}*gamma",
        },
        first_map=[x, y],
        second_map=[ca, cb],
        homology_M=[str(h) for h in homology],
        homology_L=[str(h) for h in homology_L],
        composite_zero=composite,
        exact_M=all(h.free == 0 and not h.torsion for h in homology),
        exact_L=all(h.free == 0 and not h.torsion for h in homology_L),
    )


# ---------------------------------------------------------------------------
# j-theory


def _check_generator(p: int, l: int | None) -> int:
    if l is None:
        return default_generator(p)
    if not is_topological_generator(p, l):
        raise NotAGenerator(f"{l} is not a topological generator of Z_{p}^x")
    return l


def _lines(p: int, s: int) -> list[list[Vector]]:
    seen: set[Vector] = set()
    out = []
    for v in character_vectors(p, s):
        if any(v) and v not in seen:
            line = [tuple(c * x % p for x in v) for c in range(1, p)]
            seen.update(line)
            out.append(line)
    return out


def psi_l_kernel(s: int, p: int, l: int | None = None, N: int = DEFAULT_PRECISION) -> list[CharElem]:
    """Basis of ``ker(psi^l - 1)`` on rank-zero virtual characters of ``V_s``.

    The basis is indexed by lines: ``sum_{0 != v in line} (chi_v - chi_0)``.
    It is checked against the kernel computed by Smith normal form, so a
    successful return certifies the rank ``(p^s - 1)/(p - 1)``.
    """
    l = _check_generator(p, l)
    zero = (0,) * s
    basis = []
    for line in _lines(p, s):
        terms: dict[Vector, int] = {zero: -len(line)}
        for v in line:
            terms[v] = terms.get(v, 0) + 1
        basis.append(CharElem.from_dict(p, s, terms, N))
    kernel = _kernel_lattice(s, p, l, N)
    span = ZpLattice.span(p, N, p**s, [e.coeffs for e in basis])
    if span.rank != kernel.rank:
        raise AssertionError("line basis has the wrong rank")
    kernel.coordinates([e.coeffs for e in basis])
    span.coordinates(list(kernel.basis))
    return basis


def _psi_matrix(p: int, s: int, l: int, scale: int, N: int) -> list[list[int]]:
    """Matrix of ``scale * psi^l - 1`` on ``R(V_s)`` (columns are images of ``chi_v``)."""
    mod = p**N
    vecs = character_vectors(p, s)
    idx = _vindex(p, s)
    n = len(vecs)
    mat = [[0] * n for _ in range(n)]
    for j, v in enumerate(vecs):
        mat[idx[tuple(l * x % p for x in v)]][j] += scale
        mat[j][j] -= 1
    return [[x % mod for x in row] for row in mat]


def _kernel_lattice(s: int, p: int, l: int, N: int) -> ZpLattice:
    """``ker(psi^l - 1)`` intersected with the rank-zero characters."""
    mat = _psi_matrix(p, s, l, 1, N)
    mat.append([1] * p**s)  # augmentation
    exps, _u, v = smith_form(mat, p, N)
    n = p**s
    cols = [[v[i][k] for i in range(n)] for k in range(len(exps), n)]
    return ZpLattice.span(p, N, n, cols)


def determinant_unit_factor(p: int, l: int, i: int, N: int = DEFAULT_PRECISION) -> int:
    """The factor ``(-1)^{p-1} + l^{-i(p-1)}`` modulo ``p^N``."""
    mod = p**N
    return ((-1) ** (p - 1) + pow(l, -i * (p - 1), mod)) % mod


def line_block_determinant_valuation(p: int, l: int, i: int) -> tuple[int, int]:
    """Valuations of ``det(l^{-i} psi^l - 1)`` on ``span(chi_0)`` and on one line block.

    On a line the operator is ``c P - 1`` with ``P`` a ``(p-1)``-cycle and
    ``c = l^{-i}``, whose determinant is ``1 - c^{p-1}``.
    """
    l = _check_generator(p, l)
    N = 3 * (nu(p, i) + 3) if i else 4
    mod = p**N
    c = pow(l, -i, mod)
    block = [[(c if (a == (b + 1) % (p - 1)) else 0) - int(a == b) for b in range(p - 1)] for a in range(p - 1)]
    exps, _, _ = smith_form(block, p, N)
    zero_block = (c - 1) % mod
    v0 = nu(p, zero_block) if zero_block else N
    return v0, sum(exps) + (N * (p - 1 - len(exps)))


@dataclass(frozen=True)
class _JStage:
    s: int
    E: ZpLattice
    F: ZpLattice | None  # image of the operator, for cokernel degrees


def _steinberg_lattice(p: int, s: int, N: int, reduced: bool) -> ZpLattice:
    chars = _basis_chars(p, s, N)
    if reduced:
        zero = CharElem.chi(p, (0,) * s, N)
        chars = [c - zero for c in chars if c != zero]
    return _image_lattice(p, s, N, [steinberg_add(c) for c in chars])


def _j_stage(s: int, i: int, p: int, l: int, N: int) -> tuple[_JStage, GroupDescription]:
    if i == 0:
        kernel = _kernel_lattice(s, p, l, N)
        elems = [CharElem(p, s, N, tuple(b)) for b in kernel.basis]
        G = _image_lattice(p, s, N, [steinberg_add(e) for e in elems])
        return _JStage(s, G, None), GroupDescription(p, G.rank)
    t = (i + 1) // 2
    E = _steinberg_lattice(p, s, N, reduced=False)
    mod = p**N
    c = pow(l, -t, mod)
    images = []
    for b in E.basis:
        x = CharElem(p, s, N, tuple(b))
        images.append((psi(x, l).scale(c) - x).coeffs)
    if E.rank == 0:
        return _JStage(s, E, E), GroupDescription(p)
    coords = E.coordinates(images)
    exps, _, _ = smith_form(coords, p, N)
    if i % 2 == 0:
        # kernel of an injective map is zero; a rank drop would be a free kernel
        return _JStage(s, E, None), GroupDescription(p, E.rank - len(exps))
    F = ZpLattice.span(p, N, p**s, images)
    return _JStage(s, E, F), GroupDescription(p, E.rank - len(exps), tuple(exps))


def j_groups(
    s: int,
    i: int,
    p: int,
    l: int | None = None,
    N: int = DEFAULT_PRECISION,
    variant: str = "M",
) -> GroupDescription:
    """``[M(s), Omega^i j]`` (or ``[L(s), Omega^i j]``) as a ``Z_p``-module.

    ``i = 0`` uses rank-zero characters; ``i > 0`` uses the full character
    ring, with ``psi^l`` normalised as ``l^{-t} psi^l`` on ``Omega^{2t}``.
    """
    if i < 0:
        raise ValueError("i must be non-negative")
    l = _check_generator(p, l)
    if variant == "M":
        return _j_stage(s, i, p, l, N)[1]
    if variant != "L":
        raise ValueError("variant must be 'M' or 'L'")
    ms = [_j_stage(k, i, p, l, N)[1] for k in range(s + 1)]
    return _cancel_chain(ms)[s]


@dataclass
class JComplexReport:
    p: int
    l: int
    N: int
    i: int
    variant: str
    groups: list[str]
    homology: list[str]
    homology_orders: list[int | None] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(h == "0" for h in self.homology)

    def to_json(self) -> dict:
        return {
            "prime": self.p,
            "generator": self.l,
            "precision": self.N,
            "i": self.i,
            "variant": self.variant,
            "groups": self.groups,
            "homology": self.homology,
            "exact": self.exact,
        }


def _transfer_images(p: int, s: int, N: int, basis: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    return [transfer_K(CharElem(p, s, N, tuple(b))).coeffs for b in basis]


def _index_exponent(outer: ZpLattice, gens: Sequence[Sequence[int]]) -> int:
    """``log_p [outer : span(gens)]`` for a full-rank sublattice."""
    if outer.rank == 0:
        return 0
    coords = outer.coordinates(list(gens))
    exps, _, _ = smith_form(coords, outer.p, outer.N)
    if len(exps) < outer.rank:
        raise AssertionError("sublattice is not of full rank")
    return sum(exps)


def j_complex_homology(
    p: int,
    l: int | None = None,
    N: int = DEFAULT_PRECISION,
    i: int = 0,
    variant: str = "M",
    s_max: int = 3,
) -> JComplexReport:
    """Homology of ``... -> [M(s), Omega^i j] -> [M(s+1), Omega^i j] -> ...`` under transfers."""
    l = _check_generator(p, l)
    stages = [_j_stage(s, i, p, l, N) for s in range(s_max + 1)]
    groups = [g for _, g in stages]
    if variant == "L":
        return _j_l_complex(p, l, N, i, stages)
    if variant != "M":
        raise ValueError("variant must be 'M' or 'L'")
    if i == 0 or i % 2 == 0:
        lats = [st.E for st, _ in stages] if i == 0 else None
        if lats is None:
            # every group vanishes for even i > 0
            homology = [str(GroupDescription(p, g.free)) for g in groups]
            return JComplexReport(p, l, N, i, "M", [str(g) for g in groups], homology)
        diffs = []
        for s in range(s_max):
            src, tgt = lats[s], lats[s + 1]
            if src.rank == 0 or tgt.rank == 0:
                diffs.append([[0] * src.rank for _ in range(tgt.rank)])
            else:
                diffs.append(tgt.coordinates(_transfer_images(p, s, N, src.basis)))
        h = lattice_homology(p, N, [lat.rank for lat in lats], diffs)
        return JComplexReport(
            p, l, N, i, "M", [str(g) for g in groups], [str(_as_description(x)) for x in h],
            [x.order_exponent() for x in h],
        )
    # odd i: finite groups C_s = E_s / F_s; orders of homology via lattice indices
    orders = [sum(g.torsion) if g.free == 0 else None for g in groups]
    if any(o is None for o in orders):
        raise AssertionError("cokernel groups are expected to be finite")
    im = []
    for s in range(s_max):
        (src, _), (tgt, _) = stages[s], stages[s + 1]
        if tgt.E.rank == 0 or src.E.rank == 0:
            im.append(0)
            continue
        gens = list(_transfer_images(p, s, N, src.E.basis)) + list(tgt.F.basis)  # type: ignore[union-attr]
        im.append(orders[s + 1] - _index_exponent(tgt.E, gens))
    homology, hexp = [], []
    for s in range(s_max + 1):
        out = im[s] if s < s_max else 0
        inc = im[s - 1] if s > 0 else 0
        e = orders[s] - out - inc
        hexp.append(e)
        homology.append("0" if e == 0 else f"order {p}^{e}")
    return JComplexReport(p, l, N, i, "M", [str(g) for g in groups], homology, hexp)


def _j_l_complex(p: int, l: int, N: int, i: int, stages) -> JComplexReport:
    """``L``-variant: ``L(1)`` is ``M(1)`` modulo constants, higher ``L(s)`` by cancellation."""
    ms = [g for _, g in stages]
    ls = _cancel_chain(ms)
    if any(not g.is_zero() for g in ls[2:]):
        raise NotImplementedError("L(s) for s >= 2 is nonzero; maps beyond L(1) are not modelled")
    (st0, g0), (st1, g1) = stages[0], stages[1]
    const = CharElem.chi(p, (0,), N).coeffs  # alpha, the image of inflation
    if i == 0:
        # L(0) = 0 and L(1) = [M(1), j]; the complex is concentrated in s = 1
        homology = [str(ls[0]), str(ls[1])] + ["0"] * (len(ls) - 2)
        return JComplexReport(p, l, N, i, "L", [str(g) for g in ls], homology)
    if i % 2 == 0:
        return JComplexReport(p, l, N, i, "L", [str(g) for g in ls], ["0"] * len(ls))
    # odd i: L(1) = E_1 / (F_1 + Z alpha); the map from L(0) = E_0/F_0 is the transfer
    assert st1.F is not None and st0.F is not None
    e_l1 = sum(ls[1].torsion)
    gens = list(_transfer_images(p, 0, N, st0.E.basis)) + list(st1.F.basis) + [const]
    coker = _index_exponent(st1.E, gens)
    image = e_l1 - coker
    h0 = sum(ls[0].torsion) - image
    homology = [("0" if h0 == 0 else f"order {p}^{h0}"), ("0" if coker == 0 else f"order {p}^{coker}")]
    homology += ["0"] * (len(ls) - 2)
    return JComplexReport(p, l, N, i, "L", [str(g) for g in ls], homology, [h0, coker] + [0] * (len(ls) - 2))
