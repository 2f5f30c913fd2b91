"""The mod 2 Steenrod algebra in the admissible basis.

Two versions of the algebra are supported.  With ``Convention.SQ0_IS_ONE``
this is the classical Steenrod algebra, where ``Sq^0`` is the unit.  With
``Convention.SQ0_IS_ZERO`` the same Adem relations hold except that the
``k = 0`` term is omitted, which is the algebra of dual Koszul generators of
the Dyer-Lashof algebra (``beta_i`` written as ``Sq^{i+1}``).

The quotient ``A / A Sq^1`` has the admissible monomials with last index at
least 2 as a basis, since ``A Sq^1`` is spanned by the admissible monomials
ending in ``Sq^1``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .f2core import F2Matrix, binom_mod2, vector_from_indices

__all__ = [
    "Convention",
    "ConventionMismatch",
    "L0Basis",
    "Monomial",
    "SteenrodElement",
    "adem_reduce",
    "admissible_monomials",
    "basis",
    "beta_degree",
    "format_monomial",
    "is_admissible",
    "left_mult_matrix",
    "left_multiply",
    "monomial_key",
    "parse_monomial",
    "satisfies_spanning_condition",
]

Monomial = tuple[int, ...]


class Convention(enum.Enum):
    SQ0_IS_ONE = "sq0=1"
    SQ0_IS_ZERO = "sq0=0"


class ConventionMismatch(ValueError):
    """Two elements built under different ``Sq^0`` conventions were combined."""


def is_admissible(m: Sequence[int]) -> bool:
    return all(m[j] >= 2 * m[j + 1] for j in range(len(m) - 1))


def beta_degree(m: Sequence[int]) -> int:
    """Degree of ``m`` read as a word in the ``beta_i = Sq^{i+1}``.

    This is ``sum(m) - len(m)``, the internal degree of the corresponding
    class in the cohomology of the Dyer-Lashof algebra.
    """
    return sum(m) - len(m)


def satisfies_spanning_condition(m: Sequence[int]) -> bool:
    """The condition ``i_j >= i_{j+1} + ... + i_s`` on the ``beta`` indices.

    This is the description of the unstable part of the Koszul dual; it is
    kept here to compare it with the admissible basis of ``A / A Sq^1``.
    """
    betas = [i - 1 for i in m]
    return all(betas[j] >= sum(betas[j + 1 :]) for j in range(len(betas)))


def monomial_key(m: Monomial) -> tuple[int, Monomial]:
    """Global monomial order: by length, then lexicographically."""
    return (len(m), m)


def format_monomial(m: Sequence[int]) -> str:
    return "Sq[" + ",".join(str(i) for i in m) + "]"


_MONO_RE = re.compile(r"^\s*Sq\[\s*(\d+(?:\s*,\s*\d+)*)?\s*\]\s*$")


def parse_monomial(text: str) -> Monomial:
    """Parse ``Sq[8,4,2]`` (or ``Sq[]`` for the unit) into an index tuple."""
    match = _MONO_RE.match(text)
    if match is None:
        raise ValueError(f"not a Steenrod monomial: {text!r}")
    body = match.group(1)
    if not body:
        return ()
    return tuple(int(x) for x in body.split(","))


@lru_cache(maxsize=None)
def _sq_times(k: int, m: Monomial, sq0_one: bool) -> frozenset[Monomial]:
    """Admissible expansion of ``Sq^k * Sq^m`` where ``m`` is admissible."""
    if k == 0:
        return frozenset([m]) if sq0_one else frozenset()
    if not m or k >= 2 * m[0]:
        return frozenset([(k,) + m])
    a, rest = m[0], m[1:]
    out: set[Monomial] = set()
    start = 0 if sq0_one else 1
    for j in range(start, k // 2 + 1):
        if not binom_mod2(a - j - 1, k - 2 * j):
            continue
        for t in _sq_times(j, rest, sq0_one):
            out.symmetric_difference_update(_sq_times(k + a - j, t, sq0_one))
    return frozenset(out)


def _reduce_word(word: Sequence[int], sq0_one: bool) -> frozenset[Monomial]:
    terms: set[Monomial] = {()}
    for k in reversed(word):
        nxt: set[Monomial] = set()
        for t in terms:
            nxt.symmetric_difference_update(_sq_times(k, t, sq0_one))
        terms = nxt
    return frozenset(terms)


def _drop_sq1(terms: Iterable[Monomial]) -> frozenset[Monomial]:
    return frozenset(t for t in terms if not t or t[-1] != 1)


@dataclass(frozen=True)
class SteenrodElement:
    """A GF(2) sum of admissible monomials.

    ``quotient`` marks elements of ``A / A Sq^1``; for those the terms ending
    in ``Sq^1`` are discarded on construction.
    """

    convention: Convention
    terms: frozenset[Monomial]
    quotient: bool = False

    def __post_init__(self) -> None:
        for t in self.terms:
            if not is_admissible(t) or any(i < 1 for i in t):
                raise ValueError(f"monomial {t} is not admissible")
        if self.quotient:
            object.__setattr__(self, "terms", _drop_sq1(self.terms))

    @classmethod
    def zero(cls, convention: Convention = Convention.SQ0_IS_ONE, quotient: bool = False) -> SteenrodElement:
        return cls(convention, frozenset(), quotient)

    @classmethod
    def one(cls, convention: Convention = Convention.SQ0_IS_ONE, quotient: bool = False) -> SteenrodElement:
        return cls(convention, frozenset([()]), quotient)

    @classmethod
    def from_word(
        cls,
        word: Sequence[int],
        convention: Convention = Convention.SQ0_IS_ONE,
        quotient: bool = False,
    ) -> SteenrodElement:
        return cls(convention, adem_reduce(word, convention).terms, quotient)

    @classmethod
    def parse(
        cls,
        text: str,
        convention: Convention = Convention.SQ0_IS_ONE,
        quotient: bool = False,
    ) -> SteenrodElement:
        """Parse the canonical text form, e.g. ``Sq[7,2] + Sq[9]`` or ``0``."""
        text = text.strip()
        if text == "0":
            return cls.zero(convention, quotient)
        acc: set[Monomial] = set()
        for piece in text.split("+"):
            word = parse_monomial(piece)
            acc.symmetric_difference_update(_reduce_word(word, convention is Convention.SQ0_IS_ONE))
        return cls(convention, frozenset(acc), quotient)

    def _check(self, other: SteenrodElement) -> None:
        if self.convention is not other.convention:
            raise ConventionMismatch(f"{self.convention.value} vs {other.convention.value}")

    def __add__(self, other: SteenrodElement) -> SteenrodElement:
        self._check(other)
        return SteenrodElement(self.convention, self.terms ^ other.terms, self.quotient or other.quotient)

    def __mul__(self, other: SteenrodElement) -> SteenrodElement:
        self._check(other)
        sq0_one = self.convention is Convention.SQ0_IS_ONE
        acc: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                prod: set[Monomial] = {b}
                for k in reversed(a):
                    nxt: set[Monomial] = set()
                    for t in prod:
                        nxt.symmetric_difference_update(_sq_times(k, t, sq0_one))
                    prod = nxt
                acc.symmetric_difference_update(prod)
        return SteenrodElement(self.convention, frozenset(acc), other.quotient)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms, key=monomial_key)

    def degrees(self) -> set[int]:
        return {sum(t) for t in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(format_monomial(t) for t in self.sorted_terms())


def adem_reduce(word: Sequence[int], convention: Convention = Convention.SQ0_IS_ONE) -> SteenrodElement:
    """Admissible normal form of the composite ``Sq^{w_1} ... Sq^{w_s}``."""
    if any(i < 1 for i in word):
        raise ValueError("Steenrod words must have positive indices")
    terms = _reduce_word(tuple(word), convention is Convention.SQ0_IS_ONE)
    return SteenrodElement(convention, terms)


@lru_cache(maxsize=None)
def admissible_monomials(degree: int, max_first: int | None = None) -> tuple[Monomial, ...]:
    """All admissible monomials of ``degree`` whose first index is at most ``max_first``."""
    if degree == 0:
        return ((),)
    if max_first is None:
        max_first = degree
    out = []
    for first in range(min(degree, max_first), 0, -1):
        for tail in admissible_monomials(degree - first, first // 2):
            out.append((first,) + tail)
    return tuple(out)


@dataclass(frozen=True)
class L0Basis:
    degree: int
    monomials: tuple[Monomial, ...]
    quotient_sq1: bool = True

    def index(self) -> dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.monomials)}

    def __len__(self) -> int:
        return len(self.monomials)


@lru_cache(maxsize=None)
def basis(degree: int, quotient_sq1: bool = True) -> L0Basis:
    """Admissible basis in one degree, sorted by length then lexicographically.

    With ``quotient_sq1`` the monomials ending in ``Sq^1`` are left out,
    giving a basis of ``A / A Sq^1``.
    """
    if degree < 0:
        return L0Basis(degree, (), quotient_sq1)
    monos = admissible_monomials(degree)
    if quotient_sq1:
        monos = tuple(m for m in monos if not m or m[-1] != 1)
    return L0Basis(degree, tuple(sorted(monos, key=monomial_key)), quotient_sq1)


def left_multiply(k: int, x: SteenrodElement) -> SteenrodElement:
    """``Sq^k x`` in normal form, reduced mod ``A Sq^1`` if ``x`` is a quotient element."""
    if k < 1:
        raise ValueError("k must be positive")
    if not x.is_homogeneous():
        raise ValueError("left_multiply expects a homogeneous element")
    sq0_one = x.convention is Convention.SQ0_IS_ONE
    acc: set[Monomial] = set()
    for t in x.terms:
        acc.symmetric_difference_update(_sq_times(k, t, sq0_one))
    return SteenrodElement(x.convention, frozenset(acc), x.quotient)


def left_mult_matrix(
    k: int,
    source_degree: int,
    quotient_sq1: bool = True,
    convention: Convention = Convention.SQ0_IS_ONE,
) -> F2Matrix:
    """Matrix of ``x -> Sq^k x`` from ``basis(source_degree)`` to ``basis(source_degree + k)``."""
    src = basis(source_degree, quotient_sq1)
    tgt = basis(source_degree + k, quotient_sq1)
    index = tgt.index()
    sq0_one = convention is Convention.SQ0_IS_ONE
    columns = []
    for m in src.monomials:
        terms = _sq_times(k, m, sq0_one)
        if quotient_sq1:
            terms = _drop_sq1(terms)
        columns.append(vector_from_indices(index[t] for t in terms))
    return F2Matrix.from_columns(len(tgt), columns)
