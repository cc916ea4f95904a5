"""The maps ``T_p`` as dense integer matrices.

``T_p`` sends ``e_{i_1} ⊗ ... ⊗ e_{i_k}`` to ``Σ_j δ_p(i, j) e_{j_1} ⊗ ... ⊗ e_{j_l}``,
so it has ``n^l`` rows and ``n^k`` columns.  Multi-indices are encoded in mixed
radix ``n``, most significant digit first.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exact import rank as exact_rank
from .partition import Partition, PartitionError, compose, involution, tensor

__all__ = [
    "MATRIX_ENTRY_BUDGET",
    "SizeBudgetError",
    "t_matrix",
    "FunctorialityReport",
    "check_functoriality",
    "rank_of_span",
    "index_of",
    "multi_index",
]

MATRIX_ENTRY_BUDGET = 10**7


class SizeBudgetError(ValueError):
    pass


def index_of(idx, n: int) -> int:
    """Mixed-radix position of a 1-based multi-index."""
    out = 0
    for v in idx:
        out = out * n + (v - 1)
    return out


def multi_index(pos: int, length: int, n: int) -> tuple[int, ...]:
    digits = []
    for _ in range(length):
        pos, d = divmod(pos, n)
        digits.append(d + 1)
    return tuple(reversed(digits))


def _digits(length: int, n: int) -> np.ndarray:
    """``(n**length, length)`` array of 0-based digits for every position."""
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.indices((n,) * length).reshape(length, -1)
    return grid.T


def t_matrix(p: Partition, n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be positive")
    if n ** p.size > MATRIX_ENTRY_BUDGET:
        raise SizeBudgetError(f"n^(k+l) = {n}^{p.size} exceeds the budget {MATRIX_ENTRY_BUDGET}")
    # one free value per block; T_p is the sum over block colourings
    colour = _digits(p.num_blocks, n)
    upper = colour[:, list(p.upper_labels)]
    lower = colour[:, list(p.lower_labels)]
    weights_u = n ** np.arange(p.upper - 1, -1, -1, dtype=np.int64)
    weights_l = n ** np.arange(p.lower - 1, -1, -1, dtype=np.int64)
    cols = upper @ weights_u if p.upper else np.zeros(len(colour), dtype=np.int64)
    rows = lower @ weights_l if p.lower else np.zeros(len(colour), dtype=np.int64)
    out = np.zeros((n**p.lower, n**p.upper), dtype=np.int64)
    out[rows, cols] = 1
    return out


@dataclass
class FunctorialityReport:
    n: int
    tensor_ok: bool | None = None
    compose_ok: bool | None = None
    involution_ok: bool | None = None
    closed_blocks: int | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_functoriality(p: Partition, q: Partition, n: int) -> FunctorialityReport:
    """Exact integer checks of the three functoriality identities.

    Composition is only checked when ``p.upper == q.lower``.
    """
    rep = FunctorialityReport(n)
    tp, tq = t_matrix(p, n), t_matrix(q, n)
    rep.tensor_ok = np.array_equal(t_matrix(tensor(p, q), n), np.kron(tp, tq))
    if not rep.tensor_ok:
        rep.failures.append("tensor")
    rep.involution_ok = np.array_equal(t_matrix(involution(p), n), tp.T) and np.array_equal(
        t_matrix(involution(q), n), tq.T
    )
    if not rep.involution_ok:
        rep.failures.append("involution")
    if p.upper == q.lower:
        pq, b = compose(p, q)
        rep.closed_blocks = b
        rep.compose_ok = np.array_equal(tp @ tq, n**b * t_matrix(pq, n))
        if not rep.compose_ok:
            rep.failures.append("composition")
    return rep


def rank_of_span(parts: list[Partition], n: int) -> int:
    """Exact rank of ``{T_p}`` as vectors.

    Uses ``rank(V) = rank(V V^T)`` over the rationals; the Gram matrix of 0/1
    vectors is small and integral.
    """
    if not parts:
        return 0
    shapes = {(p.upper, p.lower) for p in parts}
    if len(shapes) != 1:
        raise PartitionError(f"partitions of different shapes: {sorted(shapes)}")
    vecs = np.stack([t_matrix(p, n).ravel() for p in parts])
    gram = vecs @ vecs.T
    return exact_rank(gram.tolist())
