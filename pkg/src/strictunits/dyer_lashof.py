"""The mod 2 Dyer-Lashof algebra and its actions on F2[u], |u| = 2.

Operation indices are topological (unhalved): ``Q^i`` raises degree by
``i``.  A Dyer-Lashof structure on ``F2[u]`` compatible with the product is
fixed by constants ``eps_r`` with ``Q^{2r} u = eps_r u^{r+1}``; these are
indexed by the halved number ``r``.  Use :func:`halve` and :func:`unhalve`
to move between the two conventions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .f2core import binom_mod2

__all__ = [
    "CutoffExceeded",
    "DLMonomial",
    "EpsilonStructure",
    "PRESETS",
    "act_on_power",
    "act_word",
    "dl_adem_reduce",
    "excess",
    "halve",
    "is_allowable",
    "kahler_action",
    "power_sum_coefficient",
    "unhalve",
]

DLMonomial = tuple[int, ...]


class CutoffExceeded(KeyError):
    """An epsilon constant beyond the stored cutoff was requested."""


def is_allowable(m: Sequence[int]) -> bool:
    return all(m[j] <= 2 * m[j + 1] for j in range(len(m) - 1))


def excess(m: Sequence[int]) -> int:
    if not m:
        raise ValueError("the empty sequence has no excess")
    return m[0] - sum(m[1:])


def halve(i: int) -> int:
    """Halved index ``r`` of an even operation ``Q^{2r}``."""
    if i % 2:
        raise ValueError(f"Q^{i} has an odd index")
    return i // 2


def unhalve(r: int) -> int:
    return 2 * r


@lru_cache(maxsize=None)
def _q_times(i: int, m: DLMonomial) -> frozenset[DLMonomial]:
    """Allowable expansion of ``Q^i Q^m`` for an allowable ``m``."""
    if not m or i <= 2 * m[0]:
        return frozenset([(i,) + m])
    j, rest = m[0], m[1:]
    out: set[DLMonomial] = set()
    for k in range((i + 1) // 2, i - j):
        if not binom_mod2(k - j - 1, 2 * k - i):
            continue
        for t in _q_times(k, rest):
            out.symmetric_difference_update(_q_times(i + j - k, t))
    return frozenset(out)


def dl_adem_reduce(word: Sequence[int]) -> frozenset[DLMonomial]:
    """Allowable normal form of ``Q^{w_1} ... Q^{w_s}`` as a set of monomials."""
    if any(i < 0 for i in word):
        raise ValueError("Dyer-Lashof indices must be non-negative")
    terms: set[DLMonomial] = {()}
    for i in reversed(word):
        nxt: set[DLMonomial] = set()
        for t in terms:
            nxt.symmetric_difference_update(_q_times(i, t))
        terms = nxt
    return frozenset(terms)


_PRESET_RULES = {
    "segal": lambda r: r == 1,
    "bllmm": lambda r: r >= 1,
    "thh": lambda r: r >= 1 and (r + 1) & r == 0,
    "odd": lambda r: r % 2 == 1,
}
PRESETS = tuple(_PRESET_RULES)


@dataclass(frozen=True)
class EpsilonStructure:
    """Structure constants ``eps_0 .. eps_cutoff`` of a Dyer-Lashof action on ``F2[u]``."""

    eps: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.eps) < 2:
            raise ValueError("need at least eps_0 and eps_1")
        if any(e not in (0, 1) for e in self.eps):
            raise ValueError("epsilon constants must be 0 or 1")
        if self.eps[0] != 0 or self.eps[1] != 1:
            raise ValueError("a Dyer-Lashof structure has eps_0 = 0 and eps_1 = 1")

    @property
    def cutoff(self) -> int:
        return len(self.eps) - 1

    def __getitem__(self, r: int) -> int:
        if r < 0:
            return 0
        if r > self.cutoff:
            raise CutoffExceeded(f"eps_{r} requested but cutoff is {self.cutoff}")
        return self.eps[r]

    @classmethod
    def preset(cls, name: str, cutoff: int) -> EpsilonStructure:
        try:
            rule = _PRESET_RULES[name]
        except KeyError:
            raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
        return cls(tuple(int(rule(r)) for r in range(cutoff + 1)))

    @classmethod
    def from_mapping(cls, values: Mapping[int, int], cutoff: int) -> EpsilonStructure:
        return cls(tuple(int(values.get(r, 0)) for r in range(cutoff + 1)))

    @classmethod
    def parse(cls, text: str, cutoff: int | None = None) -> EpsilonStructure:
        """Parse ``eps=0110...`` (indexed from ``r = 0``) or a preset name."""
        text = text.strip()
        m = re.fullmatch(r"eps=([01]+)", text)
        if m:
            return cls(tuple(int(c) for c in m.group(1)))
        if cutoff is None:
            raise ValueError("a cutoff is needed to expand a preset")
        return cls.preset(text, cutoff)

    def __str__(self) -> str:
        return "eps=" + "".join(str(e) for e in self.eps)


def _bits(n: int) -> list[int]:
    return [i for i in range(n.bit_length()) if n >> i & 1]


def power_sum_coefficient(eps: EpsilonStructure, parts: int, total: int) -> int:
    """``sum over i_1 + ... + i_parts = total`` of ``eps_{i_1} ... eps_{i_parts}`` mod 2.

    Computed with the multinomial parity rule: only the terms where each
    distinct constant is repeated along a sub-sum of the binary expansion of
    ``parts`` survive, so the sum equals the number of ways of writing
    ``total = sum a_i 2^i`` over the bits ``2^i`` of ``parts`` with every
    ``eps_{a_i} = 1``, taken mod 2.
    """
    if parts < 0 or total < 0:
        return 0
    if parts == 0:
        return 1 if total == 0 else 0
    # ways[t] = parity of the number of assignments over the bits seen so far
    ways = {0: 1}
    for b in _bits(parts):
        w = 1 << b
        nxt: dict[int, int] = {}
        for t, c in ways.items():
            if not c:
                continue
            a = 0
            while t + a * w <= total:
                if eps[a]:
                    key = t + a * w
                    nxt[key] = nxt.get(key, 0) ^ 1
                a += 1
        ways = nxt
    return ways.get(total, 0)


def act_on_power(eps: EpsilonStructure, r: int, n: int) -> int:
    """Coefficient ``c`` with ``Q^{2r}(u^n) = c u^{n+r}``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if r < 0:
        raise ValueError("r must be non-negative")
    return power_sum_coefficient(eps, n, r)


def act_word(eps: EpsilonStructure, word: Sequence[int], n: int) -> int | None:
    """Apply ``Q^{w_1} ... Q^{w_s}`` to ``u^n``.

    Returns the exponent ``e`` when the result is ``u^e`` and ``None`` when it
    is zero.  Operations with odd index vanish on ``F2[u]`` for degree reasons.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    e = n
    for i in reversed(word):
        if i % 2:
            return None
        r = i // 2
        if not act_on_power(eps, r, e):
            return None
        e += r
    return e


def kahler_action(eps: EpsilonStructure, r: int) -> int:
    """Coefficient ``c`` with ``Q^{2r}(du) = c u^r du``, namely ``eps_r (r + 1)``."""
    if r < 0:
        raise ValueError("r must be non-negative")
    return eps[r] * (r + 1) % 2
