"""Randomised and exhaustive property suites shared by the CLI and the tests.

Every suite returns a :class:`SuiteResult` counting the cases it ran and
listing the first few failures.  Suites are deterministic for a fixed seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .burnside import BurnsideElem, inverse_marks, marks, norm, steinberg_idempotent_check
from .ghm import build_complex
from .padic import PadicInt, RootDomain, unit_pow
from .steenrod import SteenrodElement, adem_reduce

__all__ = ["SUITES", "SuiteResult", "run_all"]

MAX_REPORTED = 5


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.cases > 0 and not self.failures

    def record(self, ok: bool, detail: str) -> None:
        self.cases += 1
        if not ok and len(self.failures) < MAX_REPORTED:
            self.failures.append(detail)

    def to_json(self) -> dict:
        return {"suite": self.name, "cases": self.cases, "passed": self.passed, "failures": self.failures}


def d1_squared(seed: int = 0) -> SuiteResult:
    """``d_1 d_1 = 0`` on truncated and untruncated co-Koszul complexes."""
    res = SuiteResult("d1_squared_zero")
    for m in range(1, 9):
        cx = build_complex(m, (-4, 2 * m), 3)
        res.record(cx.check_d_squared(), f"truncation {m}")
    cx = build_complex(None, (-4, 16), 3, n_max=8)
    res.record(cx.check_d_squared(), "untruncated, n <= 8")
    return res


def adem_properties(seed: int = 0) -> SuiteResult:
    """Normal form is idempotent and multiplication is associative."""
    res = SuiteResult("adem_reduce")
    rng = random.Random(seed)
    for _ in range(200):
        word = [rng.randint(1, 12) for _ in range(rng.randint(1, 4))]
        x = adem_reduce(word)
        again = SteenrodElement.zero()
        for t in x.terms:
            again = again + adem_reduce(t) if t else again + SteenrodElement.one()
        res.record(again == x, f"idempotence on {word}")
    for _ in range(100):
        a, b, c = (adem_reduce([rng.randint(1, 8) for _ in range(rng.randint(1, 2))]) for _ in range(3))
        res.record((a * b) * c == a * (b * c), "associativity")
    return res


def sq_odd_relation(seed: int = 0) -> SuiteResult:
    """``Sq^{2r+1} Sq^{r+1} = 0`` for ``r <= 64``."""
    res = SuiteResult("sq_2r+1_sq_r+1")
    for r in range(0, 65):
        res.record(not adem_reduce([2 * r + 1, r + 1]).terms, f"r = {r}")
    return res


def steinberg_idempotents(seed: int = 0) -> SuiteResult:
    """``e_s^2 = e_s`` in the group ring of ``GL_s(F_p)``."""
    res = SuiteResult("steinberg_idempotent")
    for s, p in ((1, 3), (1, 5), (2, 3), (2, 5), (3, 3)):
        res.record(steinberg_idempotent_check(s, p), f"s = {s}, p = {p}")
    return res


def _random_elem(p: int, s: int, N: int, rng: random.Random) -> BurnsideElem:
    n = len(BurnsideElem.one(p, s, N).coeffs)
    return BurnsideElem(p, s, N, tuple(rng.randrange(p**N) for _ in range(n)))


def burnside_marks(seed: int = 0, cases: int = 1000) -> SuiteResult:
    """Marks are injective, multiplicative, and the norm is multiplicative."""
    res = SuiteResult("burnside_marks")
    rng = random.Random(seed)
    N = 8
    for p in (2, 3, 5, 7):
        for k in range(cases):
            s = 1 + k % 2 if p < 7 else 1
            x, y = _random_elem(p, s, N, rng), _random_elem(p, s, N, rng)
            gx, gy, gxy = marks(x), marks(y), marks(x * y)
            mod = p**N
            ok = all((a * b - c) % mod == 0 for a, b, c in zip(gx.values, gy.values, gxy.values))
            res.record(ok, f"ring hom p={p} s={s}")
            res.record(inverse_marks(gx) == x, f"injectivity p={p} s={s}")
            if s == 1:
                lhs, rhs = norm(x * y), norm(x) * norm(y)
                res.record(marks(lhs) == marks(rhs), f"norm p={p}")
    return res


def unit_pow_roundtrip(seed: int = 0, cases: int = 1000) -> SuiteResult:
    """``(x^{1/d})^d = x`` and ``(x^d)^{1/d} = x`` for principal units."""
    res = SuiteResult("unit_pow_roundtrip")
    rng = random.Random(seed)
    for p in (2, 3, 5, 7):
        q = 4 if p == 2 else p
        N = 10
        for _ in range(cases // 4):
            x = PadicInt(p, N, 1 + q * rng.randrange(p ** (N - 1)))
            d = rng.choice([k for k in range(1, 20) if k % p])
            r = unit_pow(x, 1, d)
            res.record(r**d == x, f"root p={p} d={d}")
            res.record(unit_pow(x**d, 1, d) == x, f"power p={p} d={d}")
        try:
            unit_pow(PadicInt(p, N, p), 1, 2 if p != 2 else 3)
            res.record(False, f"non-unit accepted p={p}")
        except RootDomain:
            res.record(True, "")
    return res


SUITES: dict[str, Callable[[int], SuiteResult]] = {
    "d1_squared_zero": d1_squared,
    "adem_reduce": adem_properties,
    "sq_2r+1_sq_r+1": sq_odd_relation,
    "steinberg_idempotent": steinberg_idempotents,
    "burnside_marks": burnside_marks,
    "unit_pow_roundtrip": unit_pow_roundtrip,
}


def run_all(seed: int = 0) -> list[SuiteResult]:
    return [suite(seed) for suite in SUITES.values()]
