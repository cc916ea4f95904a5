"""Monte Carlo sampling from the six classical easy groups.

* ``O``: Gaussian matrix, QR factorization, columns re-signed so that ``R``
  has a positive diagonal (this is what makes the result Haar).
* ``S``, ``H``: uniform (signed) permutation matrices.
* ``B``: ``F (1 ⊕ h) F^T`` with ``h`` Haar on ``O_{n-1}`` and ``F`` the
  Householder reflection sending ``e_1`` to ``ξ/√n``, ``ξ`` the all-ones vector.
* ``S'``, ``B'``: a uniform global sign times an ``S``, ``B`` sample.

Seeds go through :class:`numpy.random.SeedSequence`; each worker gets its own
spawned child, so results are bit-identical for a fixed worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .categories import CLASSICAL, CategoryId, parse_category

__all__ = [
    "GroupSample",
    "MCEstimate",
    "sample",
    "sample_batch",
    "estimate_integral",
    "estimate_char_moment",
    "estimate",
    "householder_to_ones",
]

DEFAULT_BATCH = 50_000


def _group(group) -> CategoryId:
    c = parse_category(group) if isinstance(group, str) else group
    if c not in CLASSICAL:
        raise ValueError(f"no sampler for {c.label}: only the classical groups are matrix groups")
    return c


@dataclass(frozen=True)
class GroupSample:
    matrix: np.ndarray
    group: CategoryId
    seed: int | None


@lru_cache(maxsize=None)
def householder_to_ones(n: int) -> np.ndarray:
    """Symmetric orthogonal ``F`` with ``F e_1 = ξ/√n``."""
    target = np.full(n, 1 / math.sqrt(n))
    v = np.zeros(n)
    v[0] = 1.0
    v -= target
    f = np.eye(n) - 2 * np.outer(v, v) / v.dot(v)
    f.setflags(write=False)
    return f


def _orthogonal(rng: np.random.Generator, size: int, n: int) -> np.ndarray:
    z = rng.standard_normal((size, n, n))
    q, r = np.linalg.qr(z)
    signs = np.sign(np.diagonal(r, axis1=1, axis2=2))
    signs[signs == 0] = 1
    return q * signs[:, None, :]


def _permutation(rng: np.random.Generator, size: int, n: int) -> np.ndarray:
    perm = np.argsort(rng.random((size, n)), axis=1)
    out = np.zeros((size, n, n))
    rows = perm.ravel()
    batch = np.repeat(np.arange(size), n)
    cols = np.tile(np.arange(n), size)
    out[batch, rows, cols] = 1.0
    return out


def _signs(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.integers(0, 2, size=shape) * 2.0 - 1.0


def _bistochastic(rng: np.random.Generator, size: int, n: int) -> np.ndarray:
    inner = np.zeros((size, n, n))
    inner[:, 0, 0] = 1.0
    if n > 1:
        inner[:, 1:, 1:] = _orthogonal(rng, size, n - 1)
    f = householder_to_ones(n)
    return f @ inner @ f


def sample_batch(group, n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` independent Haar samples as a ``(size, n, n)`` array."""
    c = _group(group)
    if n < 2:
        raise ValueError("n must be at least 2")
    base = c.base
    if base == "o":
        return _orthogonal(rng, size, n)
    if base in ("s", "s'"):
        out = _permutation(rng, size, n)
    elif base == "h":
        out = _permutation(rng, size, n) * _signs(rng, (size, 1, n))
    else:
        out = _bistochastic(rng, size, n)
    if c.even_only:
        out = out * _signs(rng, (size, 1, 1))
    return out


def sample(group, n: int, seed: int | None = None) -> GroupSample:
    rng = np.random.default_rng(seed)
    return GroupSample(sample_batch(group, n, 1, rng)[0], _group(group), seed)


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    stderr: float
    samples: int

    def sigmas(self, exact: float) -> float:
        """Distance to ``exact`` in standard errors (``inf`` if the estimate has
        no spread but misses)."""
        diff = abs(self.mean - float(exact))
        if self.stderr == 0:
            return 0.0 if diff <= 1e-12 else math.inf
        return diff / self.stderr

    def agrees(self, exact: float, sigmas: float = 4.0) -> bool:
        return self.sigmas(exact) <= sigmas

    def to_json(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr, "samples": self.samples}


def estimate(
    group,
    n: int,
    statistic: Callable[[np.ndarray], np.ndarray],
    samples: int,
    seed: int | None = 0,
    *,
    workers: int = 1,
    batch: int = DEFAULT_BATCH,
) -> MCEstimate:
    """Mean and standard error of ``statistic`` (batched, ``(B,n,n) -> (B,)``)."""
    if samples < 1:
        raise ValueError("need at least one sample")
    children = np.random.SeedSequence(seed).spawn(workers)
    shares = [samples // workers + (w < samples % workers) for w in range(workers)]

    def run(w: int) -> tuple[float, float]:
        rng = np.random.default_rng(children[w])
        total = sq = 0.0
        left = shares[w]
        while left > 0:
            size = min(batch, left)
            x = statistic(sample_batch(group, n, size, rng))
            total += float(x.sum())
            sq += float((x * x).sum())
            left -= size
        return total, sq

    if workers == 1:
        parts = [run(0)]
    else:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, range(workers)))
    total = sum(p[0] for p in parts)
    sq = sum(p[1] for p in parts)
    mean = total / samples
    if samples > 1:
        var = max(sq - samples * mean * mean, 0.0) / (samples - 1)
        stderr = math.sqrt(var / samples)
    else:
        stderr = math.inf
    return MCEstimate(mean, stderr, samples)


def estimate_integral(
    group,
    n: int,
    i: Sequence[int],
    j: Sequence[int],
    samples: int,
    seed: int | None = 0,
    *,
    workers: int = 1,
) -> MCEstimate:
    """Monte Carlo ``∫ u_{i1 j1} ... u_{ik jk}`` (1-based indices)."""
    if len(i) != len(j):
        raise ValueError("index lengths differ")
    rows = np.asarray(i, dtype=int) - 1
    cols = np.asarray(j, dtype=int) - 1
    if rows.size and (rows.min() < 0 or cols.min() < 0 or rows.max() >= n or cols.max() >= n):
        raise ValueError(f"indices must lie in 1..{n}")

    def stat(u: np.ndarray) -> np.ndarray:
        return np.prod(u[:, rows, cols], axis=1)

    return estimate(group, n, stat, samples, seed, workers=workers)


def estimate_char_moment(
    group, n: int, s: int, k: int, samples: int, seed: int | None = 0, *, workers: int = 1
) -> MCEstimate:
    """Monte Carlo ``∫ (Σ_{i≤s} u_ii)^k``."""
    if not 1 <= s <= n:
        raise ValueError(f"need 1 <= s <= n, got s={s}, n={n}")

    def stat(u: np.ndarray) -> np.ndarray:
        return np.trace(u[:, :s, :s], axis1=1, axis2=2) ** k

    return estimate(group, n, stat, samples, seed, workers=workers)
