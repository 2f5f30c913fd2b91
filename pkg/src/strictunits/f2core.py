"""Dense linear algebra over GF(2).

Vectors are Python integers read as bitsets: bit ``i`` is the coordinate of
basis element ``i``.  A matrix is stored as a tuple of row bitsets over its
columns.  Pivoting always picks the lowest available index, so every basis
returned here is a deterministic function of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "F2Matrix",
    "ImageNotContained",
    "binom_mod2",
    "echelon",
    "rank_kernel_image",
    "span_contains",
    "subquotient",
    "vector_from_indices",
    "vector_indices",
]


class ImageNotContained(ValueError):
    """An image vector does not lie in the span of the kernel vectors."""


def binom_mod2(n: int, k: int) -> int:
    """Binomial coefficient ``C(n, k)`` reduced mod 2 (Lucas' rule).

    Out-of-range arguments (``k < 0``, ``n < 0`` or ``k > n``) give 0.
    """
    if k < 0 or n < 0 or k > n:
        return 0
    return 1 if (k & ~n) == 0 else 0


def vector_from_indices(indices: Iterable[int]) -> int:
    """Pack a set of coordinate indices into a bitset vector (mod 2)."""
    v = 0
    for i in indices:
        v ^= 1 << i
    return v


def vector_indices(v: int) -> list[int]:
    """Sorted list of the coordinates set in ``v``."""
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


def _low_bit(v: int) -> int:
    return (v & -v).bit_length() - 1


def echelon(vectors: Iterable[int]) -> tuple[list[int], list[int]]:
    """Reduced echelon form of the span of ``vectors``.

    Returns ``(rows, pivots)`` where ``pivots[j]`` is the lowest set bit of
    ``rows[j]``, pivots are increasing, and no row has a bit set at another
    row's pivot.
    """
    basis: dict[int, int] = {}
    for v in vectors:
        for p, row in basis.items():
            if v >> p & 1:
                v ^= row
        if not v:
            continue
        p = _low_bit(v)
        for q in list(basis):
            if basis[q] >> p & 1:
                basis[q] ^= v
        basis[p] = v
    pivots = sorted(basis)
    return [basis[p] for p in pivots], pivots


def _reduce(v: int, rows: Sequence[int], pivots: Sequence[int]) -> int:
    for row, p in zip(rows, pivots):
        if v >> p & 1:
            v ^= row
    return v


def span_contains(vectors: Sequence[int], v: int) -> bool:
    """Whether ``v`` lies in the GF(2) span of ``vectors``."""
    rows, pivots = echelon(vectors)
    return _reduce(v, rows, pivots) == 0


@dataclass(frozen=True)
class F2Matrix:
    """A ``rows x cols`` matrix over GF(2) stored as row bitsets."""

    nrows: int
    ncols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.data) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.data)}")
        limit = 1 << self.ncols
        for r in self.data:
            if r < 0 or r >= limit:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> F2Matrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> F2Matrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[int]) -> F2Matrix:
        """Build a matrix whose ``j``-th column is the bitset ``columns[j]``."""
        rows = [0] * nrows
        for j, col in enumerate(columns):
            for i in vector_indices(col):
                if i >= nrows:
                    raise ValueError("column has bits outside the row range")
                rows[i] |= 1 << j
        return cls(nrows, len(columns), tuple(rows))

    @classmethod
    def from_array(cls, array: np.ndarray) -> F2Matrix:
        a = np.asarray(array, dtype=np.int64) % 2
        if a.ndim != 2:
            raise ValueError("expected a 2-dimensional array")
        rows = tuple(vector_from_indices(np.flatnonzero(r).tolist()) for r in a)
        return cls(a.shape[0], a.shape[1], rows)

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for i, r in enumerate(self.data):
            for j in vector_indices(r):
                out[i, j] = 1
        return out

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"entry ({i}, {j}) outside a {self.nrows}x{self.ncols} matrix")
        return self.data[i] >> j & 1

    def columns(self) -> list[int]:
        cols = [0] * self.ncols
        for i, r in enumerate(self.data):
            for j in vector_indices(r):
                cols[j] |= 1 << i
        return cols

    def transpose(self) -> F2Matrix:
        return F2Matrix(self.ncols, self.nrows, tuple(self.columns()))

    def apply(self, v: int) -> int:
        """Image of the column vector ``v`` (a bitset over the columns)."""
        out = 0
        for i, r in enumerate(self.data):
            if bin(r & v).count("1") & 1:
                out |= 1 << i
        return out

    def __matmul__(self, other: F2Matrix) -> F2Matrix:
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        rows = []
        for r in self.data:
            acc = 0
            for j in vector_indices(r):
                acc ^= other.data[j]
            rows.append(acc)
        return F2Matrix(self.nrows, other.ncols, tuple(rows))

    def is_zero(self) -> bool:
        return not any(self.data)

    def rank(self) -> int:
        return len(echelon(self.data)[0])


def rank_kernel_image(m: F2Matrix) -> tuple[int, list[int], list[int]]:
    """Rank, kernel basis and image basis of ``m`` acting on column vectors.

    The kernel basis lives in the source (bitsets over columns), the image
    basis in the target (bitsets over rows).  Both come back in reduced
    echelon form.
    """
    rows, pivots = echelon(m.data)
    rank = len(rows)
    pivot_set = set(pivots)
    kernel = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for row, p in zip(rows, pivots):
            if row >> free & 1:
                v |= 1 << p
        kernel.append(v)
    kernel, _ = echelon(kernel)
    image, _ = echelon(m.columns())
    return rank, kernel, image


def subquotient(ker_basis: Sequence[int], im_basis: Sequence[int]) -> tuple[int, list[int]]:
    """Dimension and representatives of ``span(ker) / span(im)``.

    Representatives are chosen among the given kernel vectors, scanning them
    in order and keeping each one that is independent of the image together
    with the representatives kept so far.

    Raises:
        ImageNotContained: if some image vector is outside ``span(ker)``.
    """
    k_rows, k_piv = echelon(ker_basis)
    for v in im_basis:
        if _reduce(v, k_rows, k_piv):
            raise ImageNotContained(f"image vector {v:#x} is not in the kernel span")
    rows, pivots = echelon(im_basis)
    basis = dict(zip(pivots, rows))
    reps = []
    for v in ker_basis:
        w = v
        for p in sorted(basis):
            if w >> p & 1:
                w ^= basis[p]
        if w:
            reps.append(v)
            p = _low_bit(w)
            for q in list(basis):
                if basis[q] >> p & 1:
                    basis[q] ^= w
            basis[p] = w
    return len(reps), reps
