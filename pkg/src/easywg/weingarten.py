"""Gram and Weingarten matrices over a category basis and Haar integration.

For a category ``c`` the basis ``D_k`` is the set of its members in
``P(0, k)``.  The Gram matrix is ``G_kn(p, q) = n^{b(p ∨ q)}``, the join taken
in the lattice of all partitions (also for noncrossing categories), and the
Weingarten matrix is its exact inverse.  The integral of a coordinate monomial
is

    ∫ u_{i1 j1} ... u_{ik jk} = Σ_{p,q ∈ D_k} δ_p(i) δ_q(j) W_kn(p, q).

When the vectors ``T_p`` are linearly dependent the Gram matrix is singular and
the formula is not defined; that regime is reported explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import cache
from .categories import CategoryId, enumerate_category
from .exact import RationalMatrix, SingularMatrixError, inverse
from .partition import Partition, delta, format_partition, join
from .tpoly import TPoly

__all__ = [
    "SingularGram",
    "SingularGramError",
    "WeingartenData",
    "basis",
    "gram",
    "gram_matrix",
    "weingarten",
    "weingarten_matrix",
    "integrate",
    "char_moment_exact",
    "char_moment_asymptotic",
]


@dataclass(frozen=True)
class SingularGram:
    """Marker for a Gram matrix with zero determinant."""

    category: CategoryId
    k: int
    n: int

    def __str__(self) -> str:
        return (
            f"Gram matrix of {self.category.label} at k={self.k}, n={self.n} is singular; "
            "the partition maps are linearly dependent"
        )


class SingularGramError(ArithmeticError):
    def __init__(self, marker: SingularGram):
        self.marker = marker
        super().__init__(str(marker))


@dataclass(frozen=True)
class WeingartenData:
    category: CategoryId
    k: int
    n: int
    basis: tuple[Partition, ...]
    gram: RationalMatrix
    wg: RationalMatrix | SingularGram | None = None

    @property
    def invertible(self) -> bool:
        return isinstance(self.wg, RationalMatrix)

    def require_wg(self) -> RationalMatrix:
        if isinstance(self.wg, SingularGram):
            raise SingularGramError(self.wg)
        if self.wg is None:
            raise ValueError("Weingarten matrix not computed; use weingarten()")
        return self.wg


@lru_cache(maxsize=None)
def basis(c: CategoryId, k: int) -> tuple[Partition, ...]:
    return tuple(enumerate_category(c, 0, k))


@lru_cache(maxsize=None)
def _join_blocks(c: CategoryId, k: int) -> np.ndarray:
    d = basis(c, k)
    out = np.zeros((len(d), len(d)), dtype=np.int64)
    for a, p in enumerate(d):
        for b in range(a, len(d)):
            out[a, b] = out[b, a] = join(p, d[b]).num_blocks
    return out


def gram_matrix(c: CategoryId, k: int, n: int) -> RationalMatrix:
    if n < 1:
        raise ValueError("n must be positive")
    exps = _join_blocks(c, k)
    powers = [n**e for e in range(k + 1)]
    numer = np.array([[powers[e] for e in row] for row in exps], dtype=object)
    return RationalMatrix(numer.reshape(exps.shape))


def gram(c: CategoryId, k: int, n: int) -> WeingartenData:
    return WeingartenData(c, k, n, basis(c, k), gram_matrix(c, k, n))


def weingarten_matrix(data: WeingartenData) -> RationalMatrix | SingularGram:
    if data.wg is not None:
        return data.wg
    try:
        return inverse(data.gram)
    except SingularMatrixError:
        return SingularGram(data.category, data.k, data.n)


@lru_cache(maxsize=256)
def weingarten(c: CategoryId, k: int, n: int) -> WeingartenData:
    """Gram and Weingarten data, read from or written to the disk cache."""
    data = gram(c, k, n)
    words = [format_partition(p) for p in data.basis]
    hit = cache.load(c.slug, k, n, words)
    if hit is cache.SINGULAR:
        wg = SingularGram(c, k, n)
    elif hit is not None:
        wg = hit
    else:
        wg = weingarten_matrix(data)
        cache.store(c.slug, k, n, words, wg if isinstance(wg, RationalMatrix) else None)
    return WeingartenData(c, k, n, data.basis, data.gram, wg)


def _indicator(d: Sequence[Partition], idx: Sequence[int], n: int) -> np.ndarray:
    return np.array([delta(p, (), idx, n) for p in d], dtype=object)


def integrate(c: CategoryId, n: int, i: Sequence[int], j: Sequence[int]) -> Fraction:
    """Haar integral of ``u_{i1 j1} ... u_{ik jk}`` (1-based indices)."""
    if len(i) != len(j):
        raise ValueError(f"index lengths differ: {len(i)} vs {len(j)}")
    for v in (*i, *j):
        if not 1 <= v <= n:
            raise ValueError(f"index {v} outside 1..{n}")
    k = len(i)
    data = weingarten(c, k, n)
    if not data.basis:
        return Fraction(0)
    wg = data.require_wg()
    di, dj = _indicator(data.basis, i, n), _indicator(data.basis, j, n)
    if not di.any() or not dj.any():
        return Fraction(0)
    return Fraction(int(di.dot(wg.numer).dot(dj)), wg.denom)


def char_moment_exact(c: CategoryId, n: int, s: int, k: int) -> Fraction:
    """``∫ χ_s^k = Tr(G_ks W_kn)`` for the truncated character ``Σ_{i≤s} u_ii``."""
    if not 1 <= s <= n:
        raise ValueError(f"need 1 <= s <= n, got s={s}, n={n}")
    data = weingarten(c, k, n)
    if not data.basis:
        return Fraction(0)
    wg = data.require_wg()
    return gram_matrix(c, k, s).trace_product(wg)


def char_moment_asymptotic(c: CategoryId, k: int) -> TPoly:
    """``Σ_{p ∈ D_k} t^{b(p)}``, the large-``n`` limit of the moments above."""
    counts: dict[int, int] = {}
    for p in basis(c, k):
        counts[p.num_blocks] = counts.get(p.num_blocks, 0) + 1
    return TPoly.from_coeffs(counts)
