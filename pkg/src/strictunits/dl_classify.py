"""Classification of Dyer-Lashof structures on F2[u] and binomial identities.

A structure is a bitstring ``eps_0 eps_1 ...`` with ``Q^{2r} u = eps_r u^{r+1}``.
It is valid when every Adem relation ``Q^a Q^b = sum ...`` (``a > 2b``) holds
on ``u``; by the Cartan formula this is enough for all of ``F2[u]``.

The search runs over prefixes ``eps_0 .. eps_R`` in index order.  Each Adem
instance is evaluated in three-valued logic (0, 1, unknown), where constants
beyond the prefix are unknown but a known zero factor still kills a product.
A prefix is discarded as soon as some instance evaluates to a definite
contradiction.  An undecided instance is parked until the constant that
decides it is fixed.  Instances still undecided at the cutoff are counted
as skipped, never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .dyer_lashof import EpsilonStructure, dl_adem_reduce
from .f2core import binom_mod2

__all__ = [
    "ClassificationReport",
    "a_nq",
    "a_nq_generating_function",
    "adem_instance_value",
    "b_nq",
    "binom_parity",
    "check_identity_anq",
    "check_recurrence_a",
    "check_recurrence_b",
    "classify_pattern",
    "enumerate_structures",
    "structural_constraints",
]

UNKNOWN = 2
_PATTERN_NAMES = ("segal", "bllmm", "thh", "odd")


def binom_parity(a: int, b: int) -> int:
    """``C(a, b) mod 2``; zero when ``b < 0`` or ``b > a``."""
    return binom_mod2(a, b)


# --- three-valued evaluation -------------------------------------------------


def _xor(x: int, y: int) -> int:
    if x == UNKNOWN or y == UNKNOWN:
        return UNKNOWN
    return x ^ y


def _mul(x: int, y: int) -> int:
    if x == 0 or y == 0:
        return 0
    if x == UNKNOWN or y == UNKNOWN:
        return UNKNOWN
    return 1


def _clmul(a: int, b: int, mask: int) -> int:
    """Product of two GF(2) polynomials stored as bitsets, truncated by ``mask``."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    acc = 0
    while a:
        low = a & -a
        acc ^= b << (low.bit_length() - 1)
        a ^= low
    return acc & mask


def _spread(p: int, w: int) -> int:
    """``f(x) -> f(x^w)`` on a bitset polynomial."""
    out = 0
    while p:
        low = p & -p
        out |= 1 << ((low.bit_length() - 1) * w)
        p ^= low
    return out


def _min_blocker(x: int | None, y: int | None) -> int | None:
    if x is None:
        return y
    if y is None:
        return x
    return min(x, y)


class _Evaluator:
    """Three-valued evaluation of words on ``u`` for one known prefix.

    The coefficient ``eps_{I(n, r)}`` of ``Q^{2r} u^n`` is the coefficient of
    ``x^r`` in ``E(x)^n`` with ``E(x) = sum eps_a x^a``.  Mod 2,
    ``E(x)^{2^i} = E(x^{2^i})``, so the power is a product of spread copies
    of ``E``, one per binary digit of ``n``.  A term involving an unknown
    constant has degree at least ``w * known + n - w`` where ``w`` is the
    lowest binary digit of ``n``; below that bound the coefficient is
    determined by the prefix, above it the value is reported as unknown
    together with the index that has to be fixed before it is determined.
    """

    def __init__(self, eps: Sequence[int]):
        self.known = len(eps)
        self.poly = sum(1 << a for a, e in enumerate(eps) if e)
        self._cache: dict[tuple[int, int], int] = {}

    def power_sum(self, parts: int, total: int) -> tuple[int, int | None]:
        """``(value, blocker)``; ``blocker`` is set only when the value is unknown."""
        if total < parts:
            # every part needs an index a >= 1, as eps_0 = 0
            return 0, None
        w = parts & -parts
        needed = (total - parts + w) // w + 1
        if self.known < needed:
            return UNKNOWN, needed - 1
        key = (parts, total)
        value = self._cache.get(key)
        if value is None:
            mask = (1 << (total + 1)) - 1
            base = self.poly & mask
            acc, bit, n = 1, 0, parts
            while n:
                if n & 1:
                    acc = _clmul(acc, _spread(base, 1 << bit) & mask, mask)
                n >>= 1
                bit += 1
            value = acc >> total & 1
            self._cache[key] = value
        return value, None

    def word_on_u(self, word: Sequence[int]) -> tuple[int, int | None]:
        c, e, blocker = 1, 1, None
        for i in reversed(word):
            if i % 2:
                return 0, None
            r = i // 2
            v, blk = self.power_sum(e, r)
            if v == 0:
                return 0, None
            blocker = _min_blocker(blocker, blk)
            c = _mul(c, v)
            e += r
        return c, (blocker if c == UNKNOWN else None)

    def instance(self, a: int, b: int) -> tuple[int, int | None]:
        value, blocker = self.word_on_u((a, b))
        for term in _reduced_pair(a, b):
            v, blk = self.word_on_u(term)
            blocker = _min_blocker(blocker, blk)
            value = _xor(value, v)
        return value, (blocker if value == UNKNOWN else None)


@lru_cache(maxsize=None)
def _reduced_pair(a: int, b: int) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(dl_adem_reduce((a, b))))


def adem_instance_value(eps: Sequence[int], a: int, b: int) -> int:
    """Value of ``Q^aQ^b u + (allowable expansion) u`` as 0, 1 or ``UNKNOWN``.

    ``eps`` is the known prefix; 0 means the relation holds on ``u``.
    """
    return _Evaluator(eps).instance(a, b)[0]


# --- search --------------------------------------------------------------------


@dataclass
class ClassificationReport:
    """Outcome of the prefix search at a given cutoff."""

    cutoff: int
    instance_bound: int
    survivors: list[str]
    eliminated: dict[str, tuple[int, int]] = field(default_factory=dict)
    skipped: dict[str, int] = field(default_factory=dict)
    checked: dict[str, int] = field(default_factory=dict)

    def patterns(self) -> dict[str, str | None]:
        return {s: classify_pattern(s) for s in self.survivors}

    def to_json(self) -> dict:
        return {
            "cutoff": self.cutoff,
            "instance_bound": self.instance_bound,
            "survivors": [
                {
                    "eps": "eps=" + s,
                    "pattern": classify_pattern(s),
                    "instances_checked": self.checked.get(s, 0),
                    "instances_skipped": self.skipped.get(s, 0),
                }
                for s in self.survivors
            ],
            "eliminated": {("eps=" + k): {"a": v[0], "b": v[1]} for k, v in sorted(self.eliminated.items())},
        }


def _instances(bound: int) -> list[tuple[int, int]]:
    """Even-index Adem instances ``(a, b)``, ``a > 2b``, ``a <= 2 * bound``.

    Odd indices are omitted: both sides vanish on ``F2[u]`` by degree.
    """
    out = []
    for A in range(1, bound + 1):
        for B in range(0, A):
            if 2 * B < A:
                out.append((2 * A, 2 * B))
    return out


def enumerate_structures(R: int, instance_bound: int | None = None) -> ClassificationReport:
    """All prefixes ``eps_0 .. eps_R`` not refuted by an Adem instance.

    Instances ``Q^a Q^b u`` are used for ``a <= 2 * instance_bound`` (default
    ``4R``), so constants just below the cutoff still meet the relations that
    pin them down.
    """
    if R < 4:
        raise ValueError("cutoff must be at least 4")
    bound = 4 * R if instance_bound is None else instance_bound
    all_instances = _instances(bound)
    # Each node keeps its undecided instances bucketed by the smallest
    # unknown index they touched; a bucket is revisited once that index is set.
    start: dict[int, list[tuple[int, int]]] = {2: list(all_instances)}
    frontier: list[tuple[tuple[int, ...], dict[int, list[tuple[int, int]]]]] = [((0, 1), start)]
    eliminated: dict[str, tuple[int, int]] = {}
    for r in range(2, R + 1):
        nxt = []
        for prefix, buckets in frontier:
            due = buckets.get(r, [])
            for v in (0, 1):
                eps = prefix + (v,)
                ev = _Evaluator(eps)
                added: dict[int, list[tuple[int, int]]] = {}
                refuted = None
                for inst in due:
                    val, blocker = ev.instance(*inst)
                    if val == 1:
                        refuted = inst
                        break
                    if val == UNKNOWN:
                        added.setdefault(blocker, []).append(inst)
                if refuted is None:
                    child = {k: lst for k, lst in buckets.items() if k != r}
                    for k, lst in added.items():
                        child[k] = child.get(k, []) + lst
                    nxt.append((eps, child))
                else:
                    eliminated["".join(map(str, eps))] = refuted
        frontier = nxt
    report = ClassificationReport(R, bound, [], eliminated)
    for eps, buckets in frontier:
        key = "".join(map(str, eps))
        report.survivors.append(key)
        pending = sum(len(lst) for lst in buckets.values())
        report.skipped[key] = pending
        report.checked[key] = len(all_instances) - pending
    return report


def classify_pattern(bits: str) -> str | None:
    """Name of the preset matching ``bits`` on its whole length, if any."""
    bits = bits.removeprefix("eps=")
    cutoff = len(bits) - 1
    for name in _PATTERN_NAMES:
        if str(EpsilonStructure.preset(name, cutoff)) == "eps=" + bits:
            return name
    return None


# --- derived relations ---------------------------------------------------------


def structural_constraints(eps: EpsilonStructure) -> list[str]:
    """Violations of the relations that the Adem relations force on ``eps``.

    Checked on the stored range: if ``eps_2 = 1`` then every ``eps_r = 1``;
    if ``eps_2 = 0`` then ``eps_r = 0`` for even ``r``; ``eps_3 eps_r =
    eps_{2r+1}`` for odd ``r >= 3``; if ``eps_2 = eps_3 = 0`` then
    ``eps_r = 0`` for ``r > 1``; if ``eps_2 = 0, eps_3 = 1`` then ``eps`` is
    constant on each chain ``x -> 2x + 1`` of odd numbers, and equals one
    common value on every chain not starting at 0.
    """
    R = eps.cutoff
    out: list[str] = []
    if R >= 2 and eps[2] == 1:
        for r in range(1, R + 1):
            if eps[r] != 1:
                out.append(f"eps_2 = 1 forces eps_{r} = 1")
        return out
    for r in range(2, R + 1, 2):
        if eps[r]:
            out.append(f"eps_2 = 0 forces eps_{r} = 0 (even index)")
    if R >= 3:
        for r in range(3, R + 1, 2):
            if 2 * r + 1 <= R and eps[3] * eps[r] != eps[2 * r + 1]:
                out.append(f"eps_3 eps_{r} = eps_{2 * r + 1} fails")
        if eps[3] == 0:
            for r in range(2, R + 1):
                if eps[r]:
                    out.append(f"eps_2 = eps_3 = 0 forces eps_{r} = 0")
        else:
            zeta: int | None = None
            for x in range(1, R + 1, 2):
                label = x
                while label % 2:
                    label = (label - 1) // 2
                if label == 0:
                    if eps[x] != 1:
                        out.append(f"eps_{x} must equal eps_1 = 1")
                    continue
                if zeta is None:
                    zeta = eps[x]
                elif eps[x] != zeta:
                    out.append(f"eps_{x} differs from the common value {zeta}")
    return out


# --- binomial identities ---------------------------------------------------------


def a_nq(n: int, q: int) -> int:
    """``sum_k C(k, n - k) C(n + 3q, 2k + 2q + 1)`` mod 2."""
    total = 0
    for k in range(0, n + 1):
        total ^= binom_mod2(k, n - k) & binom_mod2(n + 3 * q, 2 * k + 2 * q + 1)
    return total


def b_nq(n: int, q: int) -> int:
    """``C(n + 3q, 2q - 1)`` mod 2."""
    return binom_mod2(n + 3 * q, 2 * q - 1)


def a_nq_generating_function(n: int, q: int) -> int:
    """``[w^n z^{2q-1}] (1+z)^{n+3q} / (w + w^2 + z^2)`` as an exact integer.

    The denominator is expanded as ``sum_j (-1)^j (w + w^2)^j z^{-2j-2}``.
    """
    from math import comb

    N = n + 3 * q
    total = 0
    for j in range(0, n + 1):
        w_coeff = comb(j, n - j) if n - j >= 0 else 0
        z_power = 2 * q - 1 + 2 * j + 2
        z_coeff = comb(N, z_power) if 0 <= z_power <= N else 0
        total += (-1) ** j * w_coeff * z_coeff
    return total


def check_identity_anq(n: int, q: int) -> bool:
    """Whether ``a_{n,q} == b_{n,q}`` mod 2."""
    if n < 0 or q < 1:
        raise ValueError("need n >= 0 and q >= 1")
    return a_nq(n, q) == b_nq(n, q)


def check_recurrence_b(n: int, q: int) -> bool:
    """``b_{n,q} = b_{n-1,q+1} + b_{n-3,q+1}`` mod 2, for ``n >= 3``."""
    return b_nq(n, q) == b_nq(n - 1, q + 1) ^ b_nq(n - 3, q + 1)


def check_recurrence_a(n: int, q: int) -> bool:
    """``a_{n,q} + a_{n-1,q+1} + a_{n-3,q+1} = 0`` mod 2, for ``n >= 3``."""
    return a_nq(n, q) ^ a_nq(n - 1, q + 1) ^ a_nq(n - 3, q + 1) == 0
