"""Exact rational matrices and fraction-free elimination.

A :class:`RationalMatrix` is an integer numerator matrix (numpy object array of
Python ints) together with one positive common denominator.  Inversion uses
fraction-free Gauss-Jordan elimination (Bareiss), so every intermediate entry
is an integer minor and no rational arithmetic happens in the inner loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "RationalMatrix",
    "SingularMatrixError",
    "inverse",
    "determinant",
    "rank",
    "leading_minors",
    "fraction_inverse",
]


class SingularMatrixError(ArithmeticError):
    pass


def _int_array(rows) -> np.ndarray:
    arr = np.array([[int(x) for x in row] for row in rows], dtype=object)
    if arr.ndim != 2:
        arr = arr.reshape(len(rows), -1)
    return arr


def _parse_rational(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, eq=False)
class RationalMatrix:
    """``numer / denom`` with ``denom > 0`` and the fraction in lowest terms."""

    numer: np.ndarray
    denom: int = 1

    def __post_init__(self):
        numer = np.asarray(self.numer, dtype=object)
        if numer.ndim != 2:
            raise ValueError("a RationalMatrix is two-dimensional")
        denom = int(self.denom)
        if denom == 0:
            raise ZeroDivisionError("zero denominator")
        if denom < 0:
            numer, denom = -numer, -denom
        g = math.gcd(denom, *(int(x) for x in numer.flat)) if numer.size else denom
        if g > 1:
            numer = numer // g
            denom //= g
        object.__setattr__(self, "numer", numer)
        object.__setattr__(self, "denom", denom)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        fr = [[_parse_rational(x) for x in row] for row in rows]
        d = math.lcm(1, *(x.denominator for row in fr for x in row))
        return cls(_int_array([[x.numerator * (d // x.denominator) for x in row] for row in fr]), d)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(_int_array([[int(i == j) for j in range(n)] for i in range(n)]))

    @property
    def shape(self) -> tuple[int, int]:
        return self.numer.shape

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return Fraction(int(self.numer[i, j]), self.denom)

    def rows(self) -> list[list[Fraction]]:
        return [[Fraction(int(x), self.denom) for x in row] for row in self.numer]

    def to_strings(self) -> list[list[str]]:
        return [[_fmt(x) for x in row] for row in self.rows()]

    @classmethod
    def from_strings(cls, rows: Iterable[Iterable[str]]) -> "RationalMatrix":
        return cls.from_rows([[Fraction(x) for x in row] for row in rows])

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.numer.T.copy(), self.denom)

    @property
    def T(self) -> "RationalMatrix":
        return self.transpose()

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(self.numer.dot(other.numer), self.denom * other.denom)

    def __mul__(self, scalar) -> "RationalMatrix":
        s = _parse_rational(scalar)
        return RationalMatrix(self.numer * s.numerator, self.denom * s.denominator)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.denom == other.denom
            and bool(np.all(self.numer == other.numer))
        )

    def __hash__(self):
        return hash((self.shape, self.denom, tuple(self.numer.flat)))

    def trace(self) -> Fraction:
        return Fraction(int(sum(self.numer.diagonal(), 0)), self.denom)

    def trace_product(self, other: "RationalMatrix") -> Fraction:
        """``Tr(self @ other)`` without forming the product."""
        total = int((self.numer * other.numer.T).sum())
        return Fraction(total, self.denom * other.denom)

    def is_symmetric(self) -> bool:
        return bool(np.all(self.numer == self.numer.T))

    def __repr__(self) -> str:
        return f"RationalMatrix(shape={self.shape}, denom={self.denom})"


def _fmt(x: Fraction) -> str:
    return str(x)


def _bareiss_jordan(a: np.ndarray) -> tuple[np.ndarray, int]:
    """Integer square ``a`` -> (``adj``-like numerator, ``d``) with
    ``a^{-1} = numer / d``."""
    n = a.shape[0]
    aug = np.concatenate([a.astype(object), np.eye(n, dtype=int).astype(object)], axis=1)
    prev = 1
    for k in range(n):
        if aug[k, k] == 0:
            nz = [i for i in range(k + 1, n) if aug[i, k] != 0]
            if not nz:
                raise SingularMatrixError("matrix is singular")
            aug[[k, nz[0]]] = aug[[nz[0], k]]
        piv = aug[k, k]
        pivot_row = aug[k].copy()
        aug = (piv * aug - np.outer(aug[:, k], pivot_row)) // prev
        aug[k] = pivot_row
        prev = piv
    d = prev
    diag = aug[np.arange(n), np.arange(n)]
    right = aug[:, n:]
    numer = np.empty_like(right)
    for i in range(n):
        scaled = right[i] * d
        q = scaled // diag[i]
        assert all(q * diag[i] == scaled), "fraction-free elimination lost exactness"
        numer[i] = q
    return numer, int(d)


def inverse(m: RationalMatrix) -> RationalMatrix:
    rows, cols = m.shape
    if rows != cols:
        raise ValueError("only square matrices are invertible")
    if rows == 0:
        return m
    numer, d = _bareiss_jordan(m.numer)
    # (N / den)^{-1} = den * N^{-1}
    return RationalMatrix(numer * m.denom, d)


def _bareiss_echelon(a: np.ndarray, pivoting: bool = True) -> tuple[int, list, int]:
    """Fraction-free row echelon form.  Returns (rank, pivots, swaps)."""
    a = a.astype(object).copy()
    rows, cols = a.shape
    prev = 1
    r = 0
    pivots = []
    swaps = 0
    for c in range(cols):
        if r == rows:
            break
        if a[r, c] == 0:
            if not pivoting:
                break
            nz = [i for i in range(r + 1, rows) if a[i, c] != 0]
            if not nz:
                continue
            a[[r, nz[0]]] = a[[nz[0], r]]
            swaps += 1
        piv = a[r, c]
        below = a[r + 1 :]
        a[r + 1 :] = (piv * below - np.outer(below[:, c], a[r])) // prev
        prev = piv
        pivots.append(int(piv))
        r += 1
    return r, pivots, swaps


def determinant(m: RationalMatrix) -> Fraction:
    n, cols = m.shape
    if n != cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    r, pivots, swaps = _bareiss_echelon(m.numer)
    if r < n:
        return Fraction(0)
    return Fraction((-1) ** swaps * pivots[-1], m.denom**n)


def rank(rows) -> int:
    """Exact rank of an integer or rational matrix."""
    if isinstance(rows, RationalMatrix):
        a = rows.numer
    else:
        a = RationalMatrix.from_rows(rows).numer if len(rows) else np.zeros((0, 0), dtype=object)
    if a.size == 0:
        return 0
    return _bareiss_echelon(a)[0]


def leading_minors(m: RationalMatrix) -> list[Fraction]:
    """Determinants of the leading ``j x j`` submatrices, ``j = 1..n``.

    Without row exchanges the Bareiss pivots are exactly these minors; a zero
    pivot stops the cheap path and the rest are computed one by one.
    """
    n = m.shape[0]
    r, pivots, _ = _bareiss_echelon(m.numer, pivoting=False)
    out = [Fraction(p, m.denom ** (j + 1)) for j, p in enumerate(pivots)]
    for j in range(r, n):
        sub = RationalMatrix(m.numer[: j + 1, : j + 1], m.denom)
        out.append(determinant(sub))
    return out


def fraction_inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Textbook Gauss-Jordan over ``Fraction``; slow, used as an oracle."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]
