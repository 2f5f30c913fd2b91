"""Truncated p-adic integers, principal unit roots, and linear algebra over Z/p^N.

Everything here works modulo ``p^N`` for a fixed precision ``N``.  Roots
with exponent denominators prime to ``p`` are found by Newton iteration in
the principal units (``1 + pZ_p``, or ``1 + 4Z_2`` when ``p = 2``).  The
second half of the module is a small Smith normal form toolkit used to
compute ranks, lattices and homology of complexes of free ``Z_p``-modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

__all__ = [
    "DEFAULT_PRECISION",
    "NotAGenerator",
    "NotInLattice",
    "PadicInt",
    "RootDomain",
    "HomologyGroup",
    "ZpLattice",
    "default_generator",
    "is_topological_generator",
    "lattice_homology",
    "nu",
    "principal_log",
    "principal_part",
    "quotient_order",
    "smith_form",
    "unit_pow",
    "valuation_one_minus_power",
]

DEFAULT_PRECISION = 12


class RootDomain(ValueError):
    """A fractional power was requested outside the principal unit group."""


class NotAGenerator(ValueError):
    """The chosen ``l`` does not topologically generate the p-adic units."""


class NotInLattice(ValueError):
    """A vector could not be expressed in the coordinates of a lattice."""


def nu(p: int, n: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("the valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicInt:
    """An element of ``Z/p^N``, read as a p-adic integer known to precision ``N``.

    Combining two values of different precision gives a result at the smaller
    precision, with ``truncated`` set so callers can notice.
    """

    p: int
    N: int
    value: int
    truncated: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if self.p < 2 or self.N < 1:
            raise ValueError("need p >= 2 and N >= 1")
        object.__setattr__(self, "value", self.value % self.p**self.N)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def _coerce(self, other: PadicInt | int) -> tuple[int, int, bool]:
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ValueError(f"cannot mix {self.p}-adic and {other.p}-adic values")
            n = min(self.N, other.N)
            return other.value, n, self.truncated or other.truncated or self.N != other.N
        return int(other), self.N, self.truncated

    def __add__(self, other: PadicInt | int) -> PadicInt:
        v, n, tr = self._coerce(other)
        return PadicInt(self.p, n, self.value + v, tr)

    __radd__ = __add__

    def __sub__(self, other: PadicInt | int) -> PadicInt:
        v, n, tr = self._coerce(other)
        return PadicInt(self.p, n, self.value - v, tr)

    def __rsub__(self, other: PadicInt | int) -> PadicInt:
        v, n, tr = self._coerce(other)
        return PadicInt(self.p, n, v - self.value, tr)

    def __mul__(self, other: PadicInt | int) -> PadicInt:
        v, n, tr = self._coerce(other)
        return PadicInt(self.p, n, self.value * v, tr)

    __rmul__ = __mul__

    def __neg__(self) -> PadicInt:
        return PadicInt(self.p, self.N, -self.value, self.truncated)

    def __pow__(self, e: int) -> PadicInt:
        if e < 0:
            return self.inverse() ** (-e)
        return PadicInt(self.p, self.N, pow(self.value, e, self.modulus), self.truncated)

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def inverse(self) -> PadicInt:
        if not self.is_unit():
            raise ZeroDivisionError(f"{self.value} is not a unit mod {self.p}")
        return PadicInt(self.p, self.N, pow(self.value, -1, self.modulus), self.truncated)

    def __truediv__(self, other: PadicInt | int) -> PadicInt:
        if not isinstance(other, PadicInt):
            other = PadicInt(self.p, self.N, int(other))
        return self * other.inverse()

    def valuation(self) -> int:
        """Valuation, capped at ``N`` for values that vanish at this precision."""
        if self.value == 0:
            return self.N
        return nu(self.p, self.value)

    def divide_by_p_power(self, k: int) -> PadicInt:
        """Exact division by ``p^k``; the result is known to precision ``N - k``."""
        if k == 0:
            return self
        if k >= self.N or self.value % self.p**k:
            raise ZeroDivisionError(f"{self.value} is not divisible by {self.p}^{k} mod {self.p}^{self.N}")
        return PadicInt(self.p, self.N - k, self.value // self.p**k, True)

    def is_principal(self) -> bool:
        """Whether the value lies in ``1 + pZ_p`` (``1 + 4Z_2`` for ``p = 2``)."""
        q = 4 if self.p == 2 else self.p
        return self.value % q == 1 % q

    def signed(self) -> int:
        """Representative in ``(-p^N/2, p^N/2]``."""
        m = self.modulus
        return self.value - m if self.value > m // 2 else self.value

    def __int__(self) -> int:
        return self.value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PadicInt):
            if other.p != self.p:
                return False
            n = min(self.N, other.N)
            return (self.value - other.value) % self.p**n == 0
        if isinstance(other, int):
            return (self.value - other) % self.modulus == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.N, self.value))

    def __repr__(self) -> str:
        return f"PadicInt({self.p}, {self.N}, {self.value})"


def _principal_modulus(p: int) -> int:
    return 4 if p == 2 else p


def unit_pow(x: PadicInt, num: int, den: int = 1) -> PadicInt:
    """The principal unit ``y`` with ``y^den = x^num``.

    For ``den = 1`` this is ordinary exponentiation of a unit.  Otherwise ``x``
    must be a principal unit (``x = 1 mod p``, or ``x = 1 mod 4`` for ``p = 2``)
    and ``den`` must be prime to ``p``; the root is then unique and is found by
    Newton iteration starting from ``1``.
    """
    if den == 0:
        raise RootDomain("zero denominator")
    if den < 0:
        num, den = -num, -den
    if not x.is_unit():
        raise RootDomain(f"{x.value} is not a p-adic unit")
    if den == 1:
        return x**num
    if gcd(den, x.p) != 1:
        raise RootDomain(f"denominator {den} is not prime to {x.p}")
    if not x.is_principal():
        raise RootDomain(f"{x.value} is not a principal unit mod {_principal_modulus(x.p)}")
    target = (x**num).value
    p, N = x.p, x.N
    mod = p**N
    # Newton for f(y) = y^den - target; f'(y) = den y^(den-1) is a unit throughout.
    y = 1
    q = _principal_modulus(p)
    while True:
        fy = (pow(y, den, mod) - target) % mod
        if fy == 0:
            break
        step = fy * pow(den * pow(y, den - 1, mod), -1, mod) % mod
        y = (y - step) % mod
        if y % q != 1 % q:
            raise RootDomain("Newton iteration left the principal units")
    return PadicInt(p, N, y, x.truncated)


def principal_part(x: PadicInt) -> tuple[int, PadicInt]:
    """Split a unit into its root-of-unity part and its principal part.

    For ``p = 2`` the first entry is the sign ``+1`` or ``-1`` and the
    principal part lies in ``1 + 4Z_2``.  For odd ``p`` the first entry is the
    residue of ``x`` mod ``p`` and the second is ``x`` divided by its
    Teichmuller lift.
    """
    if not x.is_unit():
        raise RootDomain(f"{x.value} is not a unit")
    p, N = x.p, x.N
    if p == 2:
        if x.value % 4 == 1:
            return 1, x
        return -1, -x
    mod = p**N
    omega = pow(x.value, p ** (N - 1), mod)  # Teichmuller lift of x mod p
    return x.value % p, PadicInt(p, N, x.value * pow(omega, -1, mod), x.truncated)


def _log_base(p: int) -> int:
    return 5 if p == 2 else 1 + p


def principal_log(x: PadicInt) -> int:
    """Discrete logarithm of a principal unit to the base ``1 + p`` (``5`` for ``p = 2``).

    The principal units mod ``p^N`` form a cyclic group of order ``p^{N-1}``
    (``2^{N-2}`` for ``p = 2``), so this is a group isomorphism onto
    ``Z / p^{N-1}`` (resp. ``Z / 2^{N-2}``).  It agrees with the p-adic
    logarithm up to the unit ``log(1 + p) / p``; only the group structure is
    used downstream.
    """
    if not x.is_principal():
        raise RootDomain(f"{x.value} is not a principal unit")
    p, N = x.p, x.N
    mod = p**N
    g = _log_base(p)
    order_exp = N - 2 if p == 2 else N - 1
    if order_exp <= 0:
        return 0
    # Pohlig-Hellman digit extraction in the cyclic p-group.
    gen_inv = pow(g, -1, mod)
    h = pow(g, p ** (order_exp - 1), mod)  # element of order p
    h_pows = {pow(h, d, mod): d for d in range(p)}
    k = 0
    for j in range(order_exp):
        y = x.value * pow(gen_inv, k, mod) % mod
        z = pow(y, p ** (order_exp - 1 - j), mod)
        d = h_pows.get(z)
        if d is None:
            raise RootDomain("discrete logarithm failed; value is not principal")
        k += d * p**j
    return k


def is_topological_generator(p: int, l: int) -> bool:
    """``l`` generates ``Z_p^x`` topologically: a primitive root mod ``p^2``."""
    if p == 2 or l % p == 0:
        return False
    for q in _prime_factors(p - 1):
        if pow(l, (p - 1) // q, p) == 1:
            return False
    return pow(l, p - 1, p * p) != 1


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def default_generator(p: int) -> int:
    """Smallest primitive root mod ``p^2``."""
    if p == 2:
        raise NotAGenerator("Z_2^x is not topologically cyclic")
    for l in range(2, p * p):
        if is_topological_generator(p, l):
            return l
    raise NotAGenerator(f"no primitive root mod {p}^2")  # pragma: no cover


def valuation_one_minus_power(p: int, l: int, i: int) -> int:
    """``nu_p(1 - l^i)`` for a topological generator ``l`` of ``Z_p^x``.

    The answer is ``0`` unless ``p - 1`` divides ``i``, and then it is
    ``nu_p(i) + 1``.
    """
    if i < 1:
        raise ValueError("i must be positive")
    if not is_topological_generator(p, l):
        raise NotAGenerator(f"{l} is not a topological generator of Z_{p}^x")
    if i % (p - 1):
        return 0
    return nu(p, i) + 1


def quotient_order(p: int, a: int, b: int) -> int:
    """Order of ``(1 + p^b Z_p) / (1 + p^a Z_p)``, namely ``p^{a-b}``."""
    if not a >= b >= 1:
        raise ValueError("need a >= b >= 1")
    return p ** (a - b)


# ---------------------------------------------------------------------------
# Linear algebra over Z / p^N


Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_form(a: Sequence[Sequence[int]], p: int, N: int) -> tuple[list[int], Matrix, Matrix]:
    """Smith normal form over ``Z/p^N``.

    Returns ``(exps, U, V)`` with ``U A V = D`` where ``D`` is diagonal with
    entries ``p^{exps[k]}`` in non-decreasing order.  Diagonal entries that
    vanish modulo ``p^N`` are not listed, so ``len(exps)`` is the rank of ``A``
    over ``Z_p`` as seen at this precision.
    """
    mod = p**N
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[x % mod for x in row] for row in a]
    u = _identity(rows)
    v = _identity(cols)
    exps: list[int] = []
    for k in range(min(rows, cols)):
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                x = m[i][j]
                if x:
                    val = nu(p, x)
                    if best is None or val < best[0]:
                        best = (val, i, j)
                        if val == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        val, i, j = best
        m[k], m[i] = m[i], m[k]
        u[k], u[i] = u[i], u[k]
        for row in m:
            row[k], row[j] = row[j], row[k]
        for row in v:
            row[k], row[j] = row[j], row[k]
        # normalise the pivot to p^val
        unit = m[k][k] // p**val
        inv = pow(unit, -1, mod)
        m[k] = [x * inv % mod for x in m[k]]
        u[k] = [x * inv % mod for x in u[k]]
        piv = p**val
        for i2 in range(rows):
            if i2 != k and m[i2][k]:
                f = m[i2][k] // piv
                m[i2] = [(x - f * y) % mod for x, y in zip(m[i2], m[k])]
                u[i2] = [(x - f * y) % mod for x, y in zip(u[i2], u[k])]
        for j2 in range(cols):
            if j2 != k and m[k][j2]:
                f = m[k][j2] // piv
                for r in range(rows):
                    m[r][j2] = (m[r][j2] - f * m[r][k]) % mod
                for r in range(cols):
                    v[r][j2] = (v[r][j2] - f * v[r][k]) % mod
        exps.append(val)
    return exps, u, v


def _matmul(a: Matrix, b: Matrix, mod: int) -> Matrix:
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % mod for col in bt] for row in a]


def _transpose(a: Matrix, nrows: int) -> Matrix:
    if not a:
        return [[] for _ in range(nrows)]
    return [list(col) for col in zip(*a)]


@dataclass(frozen=True)
class ZpLattice:
    """A free ``Z_p``-submodule of ``Z_p^n`` given by a basis, at precision ``N``.

    ``basis`` holds column vectors.  The lattice is stored through the Smith
    decomposition of its generators so that coordinates can be solved for.
    """

    p: int
    N: int
    ambient: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, p: int, N: int, ambient: int, generators: Sequence[Sequence[int]]) -> ZpLattice:
        mod = p**N
        gens = [list(g) for g in generators]
        if not gens:
            return cls(p, N, ambient, ())
        a = _transpose(gens, ambient)  # ambient x k
        exps, u, _v = smith_form(a, p, N)
        u_inv = _inverse_unimodular(u, mod)
        basis = []
        for k, e in enumerate(exps):
            col = [u_inv[i][k] * p**e % mod for i in range(ambient)]
            basis.append(tuple(col))
        return cls(p, N, ambient, tuple(basis))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def digits_lost(self) -> int:
        """Digits of precision lost when solving for coordinates."""
        if not self.basis:
            return 0
        a = _transpose([list(b) for b in self.basis], self.ambient)
        exps, _u, _v = smith_form(a, self.p, self.N)
        return max(exps, default=0)

    def coordinates(self, vectors: Sequence[Sequence[int]], slack: int = 0) -> Matrix:
        """Coordinates (one column per vector) in terms of ``basis``.

        Coordinates are determined modulo ``p^{N - e}`` where ``p^e`` is the
        largest elementary divisor of the basis; ``slack`` tolerates that many
        digits of disagreement in the consistency check.
        """
        mod = self.p**self.N
        if not self.basis:
            for v in vectors:
                if any(x % self.p ** (self.N - slack) for x in v):
                    raise NotInLattice("nonzero vector in the zero lattice")
            return []
        a = _transpose([list(b) for b in self.basis], self.ambient)
        exps, u, v = smith_form(a, self.p, self.N)
        out_cols = []
        for vec in vectors:
            w = [sum(u[i][j] * vec[j] for j in range(self.ambient)) % mod for i in range(self.ambient)]
            y = []
            for k, e in enumerate(exps):
                if w[k] % self.p**e:
                    raise NotInLattice(f"component {k} not divisible by {self.p}^{e}")
                y.append(w[k] // self.p**e)
            tol = self.p ** max(self.N - slack, 0)
            for k in range(len(exps), self.ambient):
                if w[k] % tol:
                    raise NotInLattice("vector leaves the span of the lattice")
            x = [sum(v[i][k] * y[k] for k in range(len(exps))) % mod for i in range(len(v))]
            out_cols.append(x)
        return _transpose(out_cols, self.rank)


def _inverse_unimodular(u: Matrix, mod: int) -> Matrix:
    n = len(u)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(u)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] % mod and gcd(aug[r][c], mod) == 1)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, mod)
        aug[c] = [x * inv % mod for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(x - f * y) % mod for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class HomologyGroup:
    """``Z_p^free`` plus cyclic torsion ``Z/p^e`` for ``e`` in ``torsion``."""

    p: int
    free: int
    torsion: tuple[int, ...]

    def is_zero(self) -> bool:
        return self.free == 0 and not self.torsion

    def order_exponent(self) -> int | None:
        """``log_p`` of the order, or ``None`` if the group is infinite."""
        return None if self.free else sum(self.torsion)

    def __str__(self) -> str:
        parts = [f"Z_{self.p}"] * self.free + [f"Z/{self.p**e}" for e in self.torsion]
        return " x ".join(parts) if parts else "0"


def lattice_homology(
    p: int,
    N: int,
    ranks: Sequence[int],
    differentials: Sequence[Matrix],
) -> list[HomologyGroup]:
    """Homology of a cochain complex of free ``Z_p``-modules.

    ``ranks[s]`` is the rank of the ``s``-th group and ``differentials[s]`` is
    the ``ranks[s+1] x ranks[s]`` matrix of ``d: C^s -> C^{s+1}``.  Elementary
    divisors vanishing mod ``p^N`` are read as zero, so the answer is exact
    whenever the true divisors are below ``p^N``.
    """
    divs = []
    for s, d in enumerate(differentials):
        if ranks[s] == 0 or ranks[s + 1] == 0:
            divs.append([])
            continue
        exps, _u, _v = smith_form(d, p, N)
        divs.append(exps)
    out = []
    for s, n in enumerate(ranks):
        r_out = len(divs[s]) if s < len(divs) else 0
        incoming = divs[s - 1] if 0 < s <= len(divs) else []
        free = n - r_out - len(incoming)
        torsion = tuple(e for e in incoming if e > 0)
        out.append(HomologyGroup(p, free, torsion))
    return out
