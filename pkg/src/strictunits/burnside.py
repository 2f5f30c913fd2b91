"""Burnside rings of elementary abelian p-groups and their unit complexes.

``A(V_s)`` for ``V_s = F_p^s`` has the orbit basis ``[V_s/W]`` over all
subspaces ``W``.  The mark homomorphism sends ``X`` to the function
``W -> |X^W|`` and is injective, so most computations happen in the ghost
ring and are pulled back with :func:`inverse_marks`.

Conventions.  ``V_s`` sits inside ``V_{s+1}`` as the last ``s`` coordinates.
``GL(V_s)`` acts on subspaces through the contragredient action
``g . W = (g^{-1})^T W``, so the upper-triangular Borel stabilises the flag
spanned by the last coordinates.  Its line ``F_1 = span(e_s)`` is then the
image of ``V_1`` under the inclusions, which is what the norm formulas for
``N(a + b x)`` require.

The unit complexes ``[M(s), gl_1 S] -> [M(s+1), gl_1 S]`` are computed in
logarithmic coordinates: principal units become a ``Z_p``-lattice, the norm
and the Steinberg idempotent become integer matrices, and homology is read off
Smith normal forms.  For ``p = 2`` the sign part of ``Z_2^x`` is carried along
as a separate ``F_2``-complex.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterable, Mapping, Sequence

import numpy as np

from .padic import (
    HomologyGroup,
    PadicInt,
    RootDomain,
    ZpLattice,
    lattice_homology,
    principal_log,
    principal_part,
    smith_form,
    unit_pow,
)

__all__ = [
    "BurnsideElem",
    "GhostVector",
    "NotInImage",
    "Subspace",
    "SubspaceLattice",
    "UnitHomology",
    "UnitsComplexReport",
    "borel_order",
    "gl_order",
    "inverse_marks",
    "lattice",
    "marks",
    "norm",
    "p2_units_complex",
    "random_unit",
    "steinberg_idempotent_check",
    "steinberg_index",
    "steinberg_mult",
    "steinberg_t",
    "units_complex_homology",
]

Vector = tuple[int, ...]
MatrixT = tuple[tuple[int, ...], ...]


class NotInImage(ValueError):
    """A ghost vector is not the mark vector of any element of the Burnside ring."""


def gl_order(s: int, p: int) -> int:
    return prod(p**s - p**k for k in range(s))


def borel_order(s: int, p: int) -> int:
    return (p - 1) ** s * p ** (s * (s - 1) // 2)


def steinberg_index(s: int, p: int) -> int:
    """``[GL_s : U_s]``, the normalising constant of the Steinberg idempotent."""
    return gl_order(s, p) // p ** (s * (s - 1) // 2)


# ---------------------------------------------------------------------------
# Subspaces


def _rref(vectors: Iterable[Sequence[int]], p: int, s: int) -> MatrixT:
    rows = [[x % p for x in v] for v in vectors]
    out: list[list[int]] = []
    col = 0
    for col in range(s):
        piv = next((r for r in rows if r[col]), None)
        if piv is None:
            continue
        rows.remove(piv)
        inv = pow(piv[col], -1, p)
        piv = [x * inv % p for x in piv]
        rows = [[(x - r[col] * y) % p for x, y in zip(r, piv)] for r in rows]
        out = [[(x - o[col] * y) % p for x, y in zip(o, piv)] for o in out]
        out.append(piv)
        rows = [r for r in rows if any(r)]
    out.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    return tuple(tuple(r) for r in out)


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``F_p^s`` in reduced row echelon form."""

    p: int
    s: int
    rows: MatrixT

    @classmethod
    def span(cls, p: int, s: int, vectors: Iterable[Sequence[int]]) -> Subspace:
        return cls(p, s, _rref(vectors, p, s))

    @classmethod
    def zero(cls, p: int, s: int) -> Subspace:
        return cls(p, s, ())

    @classmethod
    def whole(cls, p: int, s: int) -> Subspace:
        return cls.span(p, s, [tuple(int(i == j) for j in range(s)) for i in range(s)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def vectors(self) -> frozenset[Vector]:
        return _vectors(self)

    def is_contained_in(self, other: Subspace) -> bool:
        return self.vectors() <= other.vectors()

    def image(self, g: MatrixT) -> Subspace:
        """``g(W)`` for a matrix ``g`` acting on column vectors."""
        return Subspace.span(self.p, self.s, (_apply(g, r, self.p) for r in self.rows))

    def __str__(self) -> str:
        if not self.rows:
            return "0"
        return "<" + ";".join("".join(str(x) for x in r) for r in self.rows) + ">"


@lru_cache(maxsize=None)
def _vectors(w: Subspace) -> frozenset[Vector]:
    out = set()
    for coeffs in itertools.product(range(w.p), repeat=w.dim):
        v = [0] * w.s
        for c, r in zip(coeffs, w.rows):
            for i, x in enumerate(r):
                v[i] = (v[i] + c * x) % w.p
        out.add(tuple(v))
    return frozenset(out)


def _apply(g: MatrixT, v: Sequence[int], p: int) -> Vector:
    return tuple(sum(gi[j] * v[j] for j in range(len(v))) % p for gi in g)


def _inv_transpose(g: MatrixT, p: int) -> MatrixT:
    n = len(g)
    aug = [list(g[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] % p)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, p)
        aug[c] = [x * inv % p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[c])]
    ginv = [row[n:] for row in aug]
    return tuple(tuple(ginv[j][i] for j in range(n)) for i in range(n))


def _all_rref(p: int, s: int) -> Iterable[MatrixT]:
    """Every reduced row echelon matrix over ``F_p`` with ``s`` columns and full row rank."""
    for k in range(s + 1):
        for pivots in itertools.combinations(range(s), k):
            free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, s) if c not in pivots]
            for vals in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * s for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, c), v in zip(free, vals):
                    rows[r][c] = v
                yield tuple(tuple(r) for r in rows)


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)):
            return g
    raise ValueError(p)  # pragma: no cover


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


def _permutations(s: int) -> list[tuple[MatrixT, int]]:
    out = []
    for perm in itertools.permutations(range(s)):
        m = tuple(tuple(int(perm[j] == i) for j in range(s)) for i in range(s))
        inversions = sum(1 for a in range(s) for b in range(a + 1, s) if perm[a] > perm[b])
        out.append((m, -1 if inversions % 2 else 1))
    return out


class SubspaceLattice:
    """All subspaces of ``F_p^s`` with the tables needed for marks and norms.

    Subspaces are ordered by dimension and then by their echelon rows, so
    index ``0`` is the zero subspace and the last index is the whole space.
    """

    def __init__(self, p: int, s: int) -> None:
        self.p, self.s = p, s
        found = [Subspace(p, s, rows) for rows in _all_rref(p, s)]
        self.subspaces: tuple[Subspace, ...] = tuple(sorted(found, key=lambda w: (w.dim, w.rows)))
        self.index = {w: i for i, w in enumerate(self.subspaces)}
        n = len(self.subspaces)
        vs = [w.vectors() for w in self.subspaces]
        self.contained = [[vs[i] <= vs[j] for j in range(n)] for i in range(n)]
        self.dims = [w.dim for w in self.subspaces]
        self.intersect = [
            [self.index[Subspace.span(p, s, vs[i] & vs[j])] for j in range(n)] for i in range(n)
        ]
        self._steinberg: list[dict[int, int]] | None = None

    def __len__(self) -> int:
        return len(self.subspaces)

    @property
    def zero(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.subspaces) - 1

    def mark(self, i: int, j: int) -> int:
        """``phi([V/W_j])(W_i)``: ``p^{s - dim W_j}`` if ``W_i <= W_j``, else ``0``."""
        return self.p ** (self.s - self.dims[j]) if self.contained[i][j] else 0

    def act(self, g: MatrixT, i: int) -> int:
        """Index of ``g . W_i = (g^{-1})^T W_i``."""
        return self.index[self.subspaces[i].image(_inv_transpose(g, self.p))]

    def flag_line(self) -> int:
        """The Borel-stable line ``F_1 = span(e_s)``."""
        return self.index[Subspace.span(self.p, self.s, [tuple(int(j == self.s - 1) for j in range(self.s))])]

    def first_line(self) -> int:
        """``sigma F_1 = span(e_1)`` for ``s = 2``."""
        return self.index[Subspace.span(self.p, self.s, [tuple(int(j == 0) for j in range(self.s))])]

    def lines(self) -> list[int]:
        return [i for i, d in enumerate(self.dims) if d == 1]

    def _lower_borel_generators(self) -> list[MatrixT]:
        # (g^{-1})^T for g in the upper Borel ranges over the lower Borel.
        p, s = self.p, self.s
        lam = _primitive_root(p)
        gens = []
        for i in range(s):
            if p > 2:
                gens.append(tuple(tuple(lam if (a == b == i) else int(a == b) for b in range(s)) for a in range(s)))
        for i in range(s):
            for j in range(i):
                gens.append(tuple(tuple(int(a == b) + int(a == i and b == j) for b in range(s)) for a in range(s)))
        return gens

    def borel_orbit(self, i: int) -> list[int]:
        gens = self._lower_borel_generators()
        seen = {i}
        frontier = [i]
        while frontier:
            nxt = []
            for k in frontier:
                w = self.subspaces[k]
                for g in gens:
                    j = self.index[w.image(g)]
                    if j not in seen:
                        seen.add(j)
                        nxt.append(j)
            frontier = nxt
        return sorted(seen)

    def steinberg_coefficients(self) -> list[dict[int, int]]:
        """Integer exponents ``c_{W,W'}`` with ``phi(X e_s)(W)^{[GL:U]} = prod phi(X)(W')^{c}``.

        ``c_{W,W'}`` is the signed number of pairs ``(b, sigma)`` with
        ``b . (sigma . W) = W'``; the Borel orbit of ``sigma . W`` is hit
        uniformly with multiplicity ``|B| / |orbit|``.
        """
        if self._steinberg is None:
            border = borel_order(self.s, self.p)
            out: list[dict[int, int]] = []
            for i in range(len(self)):
                coeffs: dict[int, int] = {}
                for perm, sign in _permutations(self.s):
                    j = self.act(perm, i)
                    orbit = self.borel_orbit(j)
                    mult = border // len(orbit)
                    for k in orbit:
                        coeffs[k] = coeffs.get(k, 0) + sign * mult
                out.append({k: c for k, c in coeffs.items() if c})
            self._steinberg = out
        return self._steinberg

    def restrict_to_last(self, sub: SubspaceLattice) -> list[int]:
        """For each ``W <= V_s``, the index of ``W cap V_{s-1}`` in ``sub``.

        ``V_{s-1}`` is the span of the last ``s - 1`` coordinates.
        """
        out = []
        for w in self.subspaces:
            inside = [v[1:] for v in w.vectors() if v[0] == 0]
            out.append(sub.index[Subspace.span(self.p, self.s - 1, inside)])
        return out


@lru_cache(maxsize=None)
def lattice(p: int, s: int) -> SubspaceLattice:
    """Cached :class:`SubspaceLattice` for ``F_p^s``."""
    return SubspaceLattice(p, s)


# ---------------------------------------------------------------------------
# Burnside and ghost elements


@dataclass(frozen=True)
class GhostVector:
    """A function from subspaces of ``V_s`` to ``Z/p^N``, stored by lattice index."""

    p: int
    s: int
    N: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        mod = self.p**self.N
        object.__setattr__(self, "values", tuple(v % mod for v in self.values))

    @property
    def lattice(self) -> SubspaceLattice:
        return lattice(self.p, self.s)

    def __getitem__(self, w: Subspace | int) -> PadicInt:
        i = w if isinstance(w, int) else self.lattice.index[w]
        return PadicInt(self.p, self.N, self.values[i])

    def __mul__(self, other: GhostVector) -> GhostVector:
        n = min(self.N, other.N)
        return GhostVector(self.p, self.s, n, tuple(a * b for a, b in zip(self.values, other.values)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GhostVector):
            return NotImplemented
        n = min(self.N, other.N)
        m = self.p**n
        return (self.p, self.s) == (other.p, other.s) and all(
            (a - b) % m == 0 for a, b in zip(self.values, other.values)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.s, self.values))

    def is_unit(self) -> bool:
        return all(v % self.p for v in self.values)

    def truncate(self, N: int) -> GhostVector:
        return GhostVector(self.p, self.s, min(N, self.N), self.values)


@dataclass(frozen=True)
class BurnsideElem:
    """An element of ``A(V_s)`` tensored with ``Z/p^N``, in the orbit basis ``[V_s / W]``.

    For ``s = 2`` the basis is ``1 = [V/V]``, ``x_l = [V/l]`` for the ``p + 1``
    lines ``l`` and ``y = [V/0]``.
    """

    p: int
    s: int
    N: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        mod = self.p**self.N
        object.__setattr__(self, "coeffs", tuple(c % mod for c in self.coeffs))
        if len(self.coeffs) != len(lattice(self.p, self.s)):
            raise ValueError("wrong number of coefficients")

    @property
    def lattice(self) -> SubspaceLattice:
        return lattice(self.p, self.s)

    @classmethod
    def scalar(cls, p: int, s: int, a: int, N: int = 10) -> BurnsideElem:
        lat = lattice(p, s)
        c = [0] * len(lat)
        c[lat.top] = a
        return cls(p, s, N, tuple(c))

    @classmethod
    def one(cls, p: int, s: int, N: int = 10) -> BurnsideElem:
        return cls.scalar(p, s, 1, N)

    @classmethod
    def orbit(cls, p: int, s: int, w: Subspace, N: int = 10) -> BurnsideElem:
        lat = lattice(p, s)
        c = [0] * len(lat)
        c[lat.index[w]] = 1
        return cls(p, s, N, tuple(c))

    @classmethod
    def from_mapping(cls, p: int, s: int, coeffs: Mapping[Subspace, int], N: int = 10) -> BurnsideElem:
        lat = lattice(p, s)
        c = [0] * len(lat)
        for w, a in coeffs.items():
            c[lat.index[w]] += a
        return cls(p, s, N, tuple(c))

    def coeff(self, w: Subspace) -> PadicInt:
        return PadicInt(self.p, self.N, self.coeffs[self.lattice.index[w]])

    def _check(self, other: BurnsideElem) -> int:
        if (self.p, self.s) != (other.p, other.s):
            raise ValueError("elements of different Burnside rings")
        return min(self.N, other.N)

    def __add__(self, other: BurnsideElem) -> BurnsideElem:
        n = self._check(other)
        return BurnsideElem(self.p, self.s, n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: BurnsideElem) -> BurnsideElem:
        n = self._check(other)
        return BurnsideElem(self.p, self.s, n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, k: int) -> BurnsideElem:
        return BurnsideElem(self.p, self.s, self.N, tuple(k * a for a in self.coeffs))

    def __mul__(self, other: BurnsideElem) -> BurnsideElem:
        # V/A x V/B is a disjoint union of p^{s - a - b + dim(A cap B)} copies of V/(A cap B).
        n = self._check(other)
        lat = self.lattice
        out = [0] * len(lat)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                k = lat.intersect[i][j]
                out[k] += a * b * self.p ** (self.s - lat.dims[i] - lat.dims[j] + lat.dims[k])
        return BurnsideElem(self.p, self.s, n, tuple(out))

    def act(self, g: MatrixT) -> BurnsideElem:
        """Right action ``X . g``, characterised by ``phi(X . g)(W) = phi(X)(g . W)``."""
        lat = self.lattice
        # [V/W'] . g = [V / g^{-1} . W']
        inv = _group_inverse(g, self.p)
        out = [0] * len(lat)
        for j, c in enumerate(self.coeffs):
            if c:
                out[lat.act(inv, j)] += c
        return BurnsideElem(self.p, self.s, self.N, tuple(out))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BurnsideElem):
            return NotImplemented
        if (self.p, self.s) != (other.p, other.s):
            return False
        m = self.p ** min(self.N, other.N)
        return all((a - b) % m == 0 for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.p, self.s, self.coeffs))

    def truncate(self, N: int) -> BurnsideElem:
        return BurnsideElem(self.p, self.s, min(N, self.N), self.coeffs)

    def __str__(self) -> str:
        lat = self.lattice
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                w = lat.subspaces[i]
                name = "1" if i == lat.top else f"[V/{w}]"
                terms.append(f"{PadicInt(self.p, self.N, c).signed()}*{name}")
        return " + ".join(terms) if terms else "0"


def _group_inverse(g: MatrixT, p: int) -> MatrixT:
    it = _inv_transpose(g, p)
    return tuple(tuple(it[j][i] for j in range(len(g))) for i in range(len(g)))


def marks(x: BurnsideElem) -> GhostVector:
    """The mark homomorphism ``phi(X)(W) = |X^W|``.

    A coset ``v + W'`` is fixed by ``W`` exactly when ``W <= W'``, so
    ``[V/W']`` contributes ``p^{s - dim W'}`` to every ``W`` inside ``W'``.
    """
    lat = x.lattice
    n = len(lat)
    vals = []
    for i in range(n):
        vals.append(sum(c * lat.mark(i, j) for j, c in enumerate(x.coeffs) if c))
    return GhostVector(x.p, x.s, x.N, tuple(vals))


def inverse_marks(g: GhostVector) -> BurnsideElem:
    """Solve ``phi(X) = g`` by back substitution from the top subspace down.

    The coefficient of ``[V/W]`` needs a division by ``p^{s - dim W}``, so the
    result is known modulo ``p^{N - s}``.  Raises :class:`NotInImage` when one
    of those divisions is not exact.
    """
    lat = g.lattice
    p, s, N = g.p, g.s, g.N
    if N <= s:
        raise ValueError(f"precision {N} too small to invert marks for s = {s}")
    mod = p**N
    n = len(lat)
    c = [0] * n
    for i in reversed(range(n)):
        rest = sum(c[j] * lat.mark(i, j) for j in range(n) if j != i and c[j])
        num = (g.values[i] - rest) % mod
        k = s - lat.dims[i]
        if num % p**k:
            raise NotInImage(f"mark at {lat.subspaces[i]} fails the congruence modulo {p}^{k}")
        c[i] = num // p**k
    return BurnsideElem(p, s, N - s, tuple(c))


def _unit_root(x: PadicInt, den: int) -> PadicInt:
    if x.p == 2:
        sign, principal = principal_part(x)
        return unit_pow(principal, 1, den) * sign
    return unit_pow(x, 1, den)


def _ghost_norm(g: GhostVector) -> GhostVector:
    big = lattice(g.p, g.s + 1)
    small = lattice(g.p, g.s)
    inter = big.restrict_to_last(small)
    mod = g.p**g.N
    vals = []
    for i in range(len(big)):
        j = inter[i]
        c = g.p if big.dims[i] == small.dims[j] else 1
        vals.append(pow(g.values[j], c, mod))
    return GhostVector(g.p, g.s + 1, g.N, tuple(vals))


def norm(x: BurnsideElem) -> BurnsideElem:
    """Multiplicative transfer ``N: A(V_s) -> A(V_{s+1})``.

    Ghostwise ``phi(N X)(W) = phi(X)(W cap V_s)^{c(W)}`` with
    ``c(W) = |V_{s+1}| |W cap V_s| / (|W| |V_s|)``, which is ``p`` when
    ``W <= V_s`` and ``1`` otherwise.
    """
    return inverse_marks(_ghost_norm(marks(x)))


def _ghost_steinberg(g: GhostVector) -> GhostVector:
    lat = g.lattice
    idx = steinberg_index(g.s, g.p)
    out = []
    for i, coeffs in enumerate(lat.steinberg_coefficients()):
        acc = PadicInt(g.p, g.N, 1)
        for j, c in coeffs.items():
            acc = acc * unit_pow(PadicInt(g.p, g.N, g.values[j]), c)
        out.append(_unit_root(acc, idx).value)
    return GhostVector(g.p, g.s, g.N, tuple(out))


def steinberg_mult(x: BurnsideElem) -> BurnsideElem:
    """The Steinberg idempotent acting on a unit: ``X -> X . e_s``.

    Ghostwise ``phi(X e_s)(W) = (prod_{b, sigma} phi(X)(b sigma . W)^{sgn sigma})^{1/[GL_s:U_s]}``.
    Raises :class:`~strictunits.padic.RootDomain` if the root does not exist.
    """
    g = marks(x)
    if not g.is_unit():
        raise RootDomain("the Steinberg action on the unit group needs a unit")
    return inverse_marks(_ghost_steinberg(g))


def steinberg_t(x: BurnsideElem) -> PadicInt:
    """The parameter ``t(X) = (phi(X)(F_1)^p / prod_{L != F_1} phi(X)(L))^{1/(p+1)}`` for ``s = 2``."""
    if x.s != 2:
        raise ValueError("t(X) is defined on A(V_2)")
    lat = x.lattice
    g = marks(x)
    f1 = lat.flag_line()
    num = g[f1] ** x.p
    den = PadicInt(x.p, x.N, 1)
    for l in lat.lines():
        if l != f1:
            den = den * g[l]
    return _unit_root(num / den, x.p + 1)


def random_unit(p: int, s: int, N: int, rng: random.Random, principal: bool = True) -> BurnsideElem:
    """A random unit of ``A(V_s)``; principal means all marks are principal units."""
    lat = lattice(p, s)
    mod = p**N
    while True:
        c = [rng.randrange(mod) for _ in range(len(lat))]
        q = 4 if (principal and p == 2) else p
        if principal:
            # marks are congruent to the top coefficient mod p; fix it mod q
            c[lat.top] = c[lat.top] - c[lat.top] % q + 1
        x = BurnsideElem(p, s, N, tuple(c))
        g = marks(x)
        if principal and all(PadicInt(p, N, v).is_principal() for v in g.values):
            return x
        if not principal and g.is_unit():
            return x


# ---------------------------------------------------------------------------
# The unit complexes


@dataclass(frozen=True)
class UnitHomology:
    """``Z_p^free`` plus ``Z/p^e`` summands from the principal part and ``(Z/2)^sign_rank``."""

    p: int
    free: int
    torsion: tuple[int, ...]
    sign_rank: int = 0

    def is_zero(self) -> bool:
        return self.free == 0 and not self.torsion and self.sign_rank == 0

    def order(self) -> int | None:
        if self.free:
            return None
        return self.p ** sum(self.torsion) * 2**self.sign_rank

    def cyclic_orders(self) -> tuple[int, ...]:
        return tuple(sorted([self.p**e for e in self.torsion] + [2] * self.sign_rank))

    def __str__(self) -> str:
        parts = [f"Z_{self.p}"] * self.free + [f"Z/{n}" for n in self.cyclic_orders()]
        return " x ".join(parts) if parts else "0"


@dataclass
class UnitsComplexReport:
    p: int
    N: int
    variant: str
    groups: list[UnitHomology]
    homology: list[UnitHomology]

    def to_json(self) -> dict:
        return {
            "prime": self.p,
            "precision": self.N,
            "variant": self.variant,
            "groups": [str(g) for g in self.groups],
            "homology": [str(h) for h in self.homology],
            "homology_orders": [h.order() for h in self.homology],
        }


def _log_precision(p: int, N: int) -> int:
    return N - 2 if p == 2 else N - 1


def _unit_generators(p: int, s: int, N: int) -> list[tuple[int, ...]]:
    """Ghost vectors of units ``1 + z``, ``z`` running over bases of ``phi(A) cap p^k Z^Cl``.

    The principal unit group ``1 + I_1`` is filtered by ``1 + I_k`` with
    ``I_k = phi(A) cap p^k Z^Cl`` and ``(1 + I_k)/(1 + I_{k+1}) = I_k / I_{k+1}``,
    so these elements generate it topologically.
    """
    lat = lattice(p, s)
    n = len(lat)
    mod = p**N
    table = [[lat.mark(i, j) for j in range(n)] for i in range(n)]
    exps, u, _v = smith_form(table, p, N)
    from .padic import _inverse_unimodular

    u_inv = _inverse_unimodular(u, mod)
    gens = []
    for k in range(1, s + 3):
        for col, e in enumerate(exps):
            scale = p ** max(e, k)
            z = [u_inv[i][col] * scale % mod for i in range(n)]
            gens.append(tuple((1 + x) % mod for x in z))
    return gens


@dataclass
class _Stage:
    """Logarithmic model of ``[M(s), gl_1 S]`` at one ``s``."""

    s: int
    n: int
    principal: ZpLattice
    signs: ZpLattice | None


def _stage(p: int, s: int, N: int) -> _Stage:
    lat = lattice(p, s)
    n = len(lat)
    M = _log_precision(p, N)
    coeffs = lat.steinberg_coefficients()
    idx_inv_p = pow(steinberg_index(s, p), -1, p**M)
    if all(not c for c in coeffs):
        zero = ZpLattice(p, M, n, ())
        return _Stage(s, n, zero, ZpLattice(2, 1, n, ()) if p == 2 else None)
    logs, signs = [], []
    for gvec in _unit_generators(p, s, N):
        if p == 2:
            sg, pr = zip(*(principal_part(PadicInt(p, N, v)) for v in gvec))
            sign_vec = tuple(int(x == -1) for x in sg)
            pure = GhostVector(p, s, N, tuple(-1 if b else 1 for b in sign_vec))
            try:
                inverse_marks(pure)
            except NotInImage:
                raise AssertionError("unit group does not split into sign and principal parts") from None
            signs.append(sign_vec)
            logs.append(tuple(principal_log(x) for x in pr))
        else:
            logs.append(tuple(principal_log(PadicInt(p, N, v)) for v in gvec))

    def apply_e(vec: Sequence[int], modulus: int, scale: int) -> list[int]:
        return [sum(c * vec[j] for j, c in coeffs[i].items()) * scale % modulus for i in range(n)]

    principal = ZpLattice.span(p, M, n, [apply_e(v, p**M, idx_inv_p) for v in logs])
    sign_lat = None
    if p == 2:
        sign_lat = ZpLattice.span(2, 1, n, [apply_e(v, 2, 1) for v in signs])
    return _Stage(s, n, principal, sign_lat)


def _norm_matrix(p: int, s: int, modulus: int) -> list[list[int]]:
    """Matrix of the norm in logarithmic ghost coordinates, ``Cl(V_{s+1}) x Cl(V_s)``."""
    big, small = lattice(p, s + 1), lattice(p, s)
    inter = big.restrict_to_last(small)
    mat = [[0] * len(small) for _ in range(len(big))]
    for i in range(len(big)):
        j = inter[i]
        mat[i][j] = (p if big.dims[i] == small.dims[j] else 1) % modulus
    return mat


def _steinberg_matrix(p: int, s: int, modulus: int) -> list[list[int]]:
    lat = lattice(p, s)
    inv = pow(steinberg_index(s, p), -1, modulus) if modulus > 1 else 0
    mat = [[0] * len(lat) for _ in range(len(lat))]
    for i, coeffs in enumerate(lat.steinberg_coefficients()):
        for j, c in coeffs.items():
            mat[i][j] = c * inv % modulus
    return mat


def _mv(a: list[list[int]], v: Sequence[int], modulus: int) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) % modulus for row in a]


def _complex_matrices(
    p: int, stages: list[_Stage], modulus: int, which: str
) -> tuple[list[ZpLattice], list[list[list[int]]], int]:
    """Groups and differentials (in lattice coordinates) of the principal or sign complex."""
    lats = [st.principal if which == "principal" else st.signs for st in stages]
    lost = max((lat.digits_lost() for lat in lats if lat is not None), default=0)
    diffs = []
    for s in range(len(stages) - 1):
        src, tgt = lats[s], lats[s + 1]
        assert src is not None and tgt is not None
        if src.rank == 0 or tgt.rank == 0:
            diffs.append([[0] * src.rank for _ in range(tgt.rank)])
            continue
        nm = _norm_matrix(p, s, modulus)
        em = _steinberg_matrix(p, s + 1, modulus)
        images = [_mv(em, _mv(nm, b, modulus), modulus) for b in src.basis]
        diffs.append(tgt.coordinates(images, slack=lost))
    return lats, diffs, lost


def _reduction(p: int, n: int, s: int, modulus: int) -> list[int]:
    """Linear form picking out the ``L(s)`` summand: ``log phi(0) - log phi(V_s)``."""
    lat = lattice(p, s)
    r = [0] * n
    if s == 0:
        r[lat.top] = 1
    else:
        r[lat.zero] = 1
        r[lat.top] = -1 % modulus
    return r


def _l_complex(
    p: int,
    prec: int,
    lats: list[ZpLattice],
    diffs: list[list[list[int]]],
) -> tuple[list[int], list[list[list[int]]]]:
    """Pass from the ``M``-complex to the ``L``-complex through the reduction forms."""
    modulus = p**prec
    reds = []
    for s, lat in enumerate(lats):
        r = _reduction(p, lat.ambient, s, modulus)
        reds.append([[sum(x * y for x, y in zip(r, b)) % modulus for b in lat.basis]])  # 1 x rank
    l_lats = []
    for s, lat in enumerate(lats):
        row = reds[s][0]
        l_lats.append(ZpLattice.span(p, prec, 1, [[x] for x in row]) if row else ZpLattice(p, prec, 1, ()))
    ranks = [lat.rank for lat in l_lats]
    l_diffs = []
    for s in range(len(lats) - 1):
        src, tgt = l_lats[s], l_lats[s + 1]
        if src.rank == 0 or tgt.rank == 0:
            l_diffs.append([[0] * src.rank for _ in range(tgt.rank)])
            continue
        r_src = reds[s][0]
        exps, u, v = smith_form([r_src], p, prec)
        # lift the generator of L(s) to the M(s) lattice coordinates
        gen = src.basis[0][0]
        w = u[0][0] * gen % modulus
        if w % p ** exps[0]:
            raise AssertionError("generator of L(s) does not lift")
        lift = [v[i][0] * (w // p ** exps[0]) % modulus for i in range(len(v))]
        # the map must vanish on the kernel of the reduction
        d = diffs[s]
        r_tgt = reds[s + 1][0]
        for kcol in range(1, len(v)):
            kvec = [v[i][kcol] for i in range(len(v))]
            img = [sum(d[a][b] * kvec[b] for b in range(len(kvec))) for a in range(len(d))]
            if sum(x * y for x, y in zip(r_tgt, img)) % modulus:
                raise AssertionError("the reduced transfer is not well defined on L(s)")
        img = [sum(d[a][b] * lift[b] for b in range(len(lift))) for a in range(len(d))]
        val = sum(x * y for x, y in zip(r_tgt, img)) % modulus
        l_diffs.append(tgt.coordinates([[val]], slack=0))
    return ranks, l_diffs


def units_complex_homology(p: int, N: int = 10, variant: str = "M", s_max: int = 3) -> UnitsComplexReport:
    """Homology of ``[M(0), gl_1 S] -> [M(1), gl_1 S] -> ...`` (or the ``L(s)`` version).

    Each group is the image of the Steinberg idempotent on the completed
    units of ``A(V_s)``; the maps are norms followed by ``e_{s+1}``.  Works
    for every prime; for ``p = 2`` the sign part is handled alongside.
    """
    if variant not in ("M", "L"):
        raise ValueError("variant must be 'M' or 'L'")
    if N < 4 or (p == 2 and N < 6):
        raise ValueError("precision too small")
    stages = [_stage(p, s, N) for s in range(s_max + 1)]
    M = _log_precision(p, N)
    lats, diffs, lost = _complex_matrices(p, stages, p**M, "principal")
    prec = M - lost
    if variant == "M":
        ranks = [lat.rank for lat in lats]
    else:
        ranks, diffs = _l_complex(p, prec, lats, diffs)
    diffs = [[[x % p**prec for x in row] for row in d] for d in diffs]
    principal = lattice_homology(p, prec, ranks, diffs)
    groups_p = [(r, ()) for r in ranks]
    sign_h: list[HomologyGroup] | None = None
    sign_ranks = [0] * len(stages)
    if p == 2:
        slats, sdiffs, _ = _complex_matrices(2, stages, 2, "sign")
        if variant == "M":
            sign_ranks = [lat.rank for lat in slats]
        else:
            sign_ranks, sdiffs = _l_complex(2, 1, slats, sdiffs)
        sign_h = lattice_homology(2, 1, sign_ranks, sdiffs)
    groups = [
        UnitHomology(p, r, t, sign_ranks[s]) for s, (r, t) in enumerate(groups_p)
    ]
    homology = [
        UnitHomology(p, h.free, h.torsion, sign_h[s].free if sign_h else 0) for s, h in enumerate(principal)
    ]
    # the last group only sees its incoming map; it is zero whenever e_{s_max} vanishes
    return UnitsComplexReport(p, N, variant, groups, homology)


def p2_units_complex(N: int = 8) -> dict[str, UnitsComplexReport]:
    """Both unit complexes at ``p = 2``, with ``Z_2^x = {+-1} x (1 + 4 Z_2)`` tracked."""
    if N < 6:
        raise ValueError("p = 2 needs precision at least 6")
    return {v: units_complex_homology(2, N, v) for v in ("M", "L")}


# ---------------------------------------------------------------------------
# The Steinberg idempotent in the group ring


def _encode(mats: np.ndarray, p: int) -> np.ndarray:
    flat = mats.reshape(mats.shape[:-2] + (-1,)).astype(np.int64)
    weights = p ** np.arange(flat.shape[-1], dtype=np.int64)
    return (flat * weights).sum(axis=-1)


def steinberg_idempotent_check(s: int, p: int, N: int = 8) -> bool:
    """Check ``e_s^2 = e_s`` in ``Z/p^N [GL_s(F_p)]`` by direct convolution.

    ``e_s = [GL_s:U_s]^{-1} sum_{b in B_s, sigma in Sigma_s} sgn(sigma) b sigma``.
    """
    mod = p**N
    borel = []
    diag_choices = itertools.product(range(1, p), repeat=s)
    upper_pos = [(i, j) for i in range(s) for j in range(i + 1, s)]
    for diag in diag_choices:
        for ups in itertools.product(range(p), repeat=len(upper_pos)):
            m = np.zeros((s, s), dtype=np.int64)
            for i, d in enumerate(diag):
                m[i, i] = d
            for (i, j), x in zip(upper_pos, ups):
                m[i, j] = x
            borel.append(m)
    elems, signs = [], []
    for perm, sign in _permutations(s):
        pm = np.array(perm, dtype=np.int64)
        for b in borel:
            elems.append(b @ pm % p)
            signs.append(sign)
    g = np.stack(elems)
    coef = (np.array(signs, dtype=np.int64) * pow(steinberg_index(s, p), -1, mod)) % mod
    keys = _encode(g, p)
    if len(set(keys.tolist())) != len(keys):
        raise AssertionError("B_s x Sigma_s does not embed in GL_s")
    e = {}
    for k, c in zip(keys.tolist(), coef.tolist()):
        e[k] = c
    size = p ** (s * s)
    acc = np.zeros(size, dtype=np.int64)
    chunk = max(1, 2_000_000 // (len(g) * s * s))
    for start in range(0, len(g), chunk):
        block = g[start : start + chunk]
        prods = np.einsum("aij,bjk->abik", block, g) % p
        pk = _encode(prods, p).ravel()
        pc = (coef[start : start + chunk, None] * coef[None, :] % mod).ravel()
        np.add.at(acc, pk, pc)
        acc %= mod
    nz = {int(k): int(v) for k, v in enumerate(acc.tolist()) if v}
    return nz == {k: v for k, v in e.items() if v % mod}
