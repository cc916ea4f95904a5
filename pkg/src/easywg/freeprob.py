"""Moments and cumulants, classical and free, over polynomials in ``t``.

The moment-cumulant formula sums products of cumulants over all partitions
(classical) or all noncrossing partitions (free) of ``{1..k}``.  Both are
evaluated through their standard recursions on the block containing the
first point:

* classical: ``m_n = Σ_j C(n-1, j-1) κ_j m_{n-j}``;
* free: ``m_n = Σ_s κ_s [x^{n-s}] M(x)^s`` with ``M(x) = Σ m_i x^i``.

Each recursion is triangular in the top cumulant, so it inverts in place.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .categories import CategoryId
from .tpoly import T, TPoly, as_tpoly

__all__ = [
    "Kind",
    "MomentSequence",
    "CumulantSequence",
    "moments_from_cumulants",
    "cumulants_from_moments",
    "bercovici_pata",
    "LawId",
    "parse_law",
    "law_moments",
    "CATEGORY_LAW",
    "side_of",
    "character_moments",
    "Verdict",
    "semigroup_verdict",
    "is_additive",
    "dilate",
    "LAW_BOUND",
]

LAW_BOUND = 40


class Kind(enum.Enum):
    CLASSICAL = "classical"
    FREE = "free"


def _entries(values: Iterable) -> tuple[TPoly, ...]:
    return tuple(as_tpoly(v) for v in values)


@dataclass(frozen=True)
class MomentSequence:
    """Moments ``m_1..m_K``; ``m_0 = 1`` is implicit."""

    kind: Kind
    entries: tuple[TPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", _entries(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k: int) -> TPoly:
        """1-based access; ``seq[0]`` is the constant 1."""
        return TPoly.constant(1) if k == 0 else self.entries[k - 1]


@dataclass(frozen=True)
class CumulantSequence:
    kind: Kind
    entries: tuple[TPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", _entries(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k: int) -> TPoly:
        return self.entries[k - 1]


class _PowerTable:
    """Coefficients ``[x^d] M(x)^s`` for a growing moment list."""

    def __init__(self, moments: list[TPoly]):
        self.m = moments  # m[0] = 1, shared and extended by the caller
        self.memo: dict[tuple[int, int], TPoly] = {}

    def coef(self, s: int, d: int) -> TPoly:
        if s == 0:
            return TPoly.constant(1 if d == 0 else 0)
        key = (s, d)
        if key not in self.memo:
            self.memo[key] = sum(
                (self.m[i] * self.coef(s - 1, d - i) for i in range(d + 1)), TPoly()
            )
        return self.memo[key]


def moments_from_cumulants(c: CumulantSequence) -> MomentSequence:
    kappa = (None,) + c.entries
    m: list[TPoly] = [TPoly.constant(1)]
    table = _PowerTable(m)
    for n in range(1, len(c) + 1):
        if c.kind is Kind.CLASSICAL:
            total = sum((comb(n - 1, j - 1) * kappa[j] * m[n - j] for j in range(1, n + 1)), TPoly())
        else:
            total = sum((kappa[s] * table.coef(s, n - s) for s in range(1, n + 1)), TPoly())
        m.append(total)
    return MomentSequence(c.kind, tuple(m[1:]))


def cumulants_from_moments(ms: MomentSequence) -> CumulantSequence:
    m = [TPoly.constant(1)] + list(ms.entries)
    kappa: list = [None]
    table = _PowerTable(m)
    for n in range(1, len(ms) + 1):
        if ms.kind is Kind.CLASSICAL:
            rest = sum((comb(n - 1, j - 1) * kappa[j] * m[n - j] for j in range(1, n)), TPoly())
        else:
            rest = sum((kappa[s] * table.coef(s, n - s) for s in range(1, n)), TPoly())
        kappa.append(m[n] - rest)
    return CumulantSequence(ms.kind, tuple(kappa[1:]))


def bercovici_pata(ms: MomentSequence) -> MomentSequence:
    """Free moments with the same cumulants as the classical input."""
    if ms.kind is not Kind.CLASSICAL:
        raise ValueError("the Bercovici-Pata map takes a classical moment sequence")
    kappa = cumulants_from_moments(ms)
    return moments_from_cumulants(CumulantSequence(Kind.FREE, kappa.entries))


class LawId(enum.Enum):
    GAUSSIAN = "g"
    POISSON = "p"
    BESSEL = "b"
    SHIFTED_GAUSSIAN = "s"
    SEMICIRCLE = "gamma"
    FREE_POISSON = "pi"
    FREE_BESSEL = "beta"
    SHIFTED_SEMICIRCLE = "sigma"
    GAUSSIAN_SYM = "g'"
    POISSON_SYM = "p'"
    BESSEL_SYM = "b'"
    SHIFTED_GAUSSIAN_SYM = "s'"
    SEMICIRCLE_SYM = "gamma'"
    FREE_POISSON_SYM = "pi'"
    FREE_BESSEL_SYM = "beta'"
    SHIFTED_SEMICIRCLE_SYM = "sigma'"
    RAYLEIGH_SYM = "rho'"

    @property
    def symmetrized(self) -> bool:
        return self.value.endswith("'")

    @property
    def base(self) -> "LawId":
        return LawId(self.value.rstrip("'"))

    @property
    def kind(self) -> Kind:
        return Kind.FREE if self.value.rstrip("'") in _FREE_LAWS else Kind.CLASSICAL

    @property
    def symbol(self) -> str:
        head = self.value.rstrip("'")
        return _GREEK.get(head, head) + ("'" if self.symmetrized else "")


_GREEK = {"gamma": "γ", "pi": "π", "beta": "β", "sigma": "σ", "rho": "ρ"}
_FREE_LAWS = ("gamma", "pi", "beta", "sigma")
_SYMBOLS = {v: k for k, v in _GREEK.items()}


def parse_law(name: str) -> LawId:
    key = name.strip()
    head, primes = key.rstrip("'"), key[len(key.rstrip("'")) :]
    key = _SYMBOLS.get(head, head.lower()) + primes
    if key == "rho":
        raise ValueError("only the symmetrized Rayleigh law rho' is supported")
    try:
        return LawId(key)
    except ValueError:
        names = ", ".join(law.value for law in LawId)
        raise ValueError(f"unknown law {name!r}; expected one of {names}") from None


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _gaussian(K: int) -> list[TPoly]:
    return [
        TPoly.monomial(k // 2, _double_factorial(k - 1)) if k % 2 == 0 else TPoly()
        for k in range(K + 1)
    ]


def _poisson(K: int) -> list[TPoly]:
    m = [TPoly.constant(1)]
    for k in range(K):
        m.append(T * sum((comb(k, j) * m[j] for j in range(k + 1)), TPoly()))
    return m


def _catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def _semicircle(K: int) -> list[TPoly]:
    return [TPoly.monomial(k // 2, _catalan(k // 2)) if k % 2 == 0 else TPoly() for k in range(K + 1)]


def _narayana(K: int) -> list[TPoly]:
    out = [TPoly.constant(1)]
    for k in range(1, K + 1):
        out.append(TPoly.from_coeffs({j: Fraction(comb(k, j) * comb(k, j - 1), k) for j in range(1, k + 1)}))
    return out


def _even_block_sum(K: int) -> list[TPoly]:
    # partitions into even blocks: the block of point 1 has even size j
    m = [TPoly.constant(1)]
    for n in range(1, K + 1):
        m.append(sum((comb(n - 1, j - 1) * T * m[n - j] for j in range(2, n + 1, 2)), TPoly()))
    return m


def _nc_even_block_sum(K: int) -> list[TPoly]:
    # noncrossing: the block of point 1 has j points and j gaps, each filled
    # independently, the gaps summing to n - j points
    m = [TPoly.constant(1)]
    table = _PowerTable(m)
    for n in range(1, K + 1):
        m.append(sum((T * table.coef(j, n - j) for j in range(2, n + 1, 2)), TPoly()))
    return m


def _shift(seq: list[TPoly]) -> list[TPoly]:
    """Moments of ``t + X``: ``Σ_r C(k, r) t^r m_{k-r}``."""
    return [
        sum((comb(k, r) * T**r * seq[k - r] for r in range(k + 1)), TPoly())
        for k in range(len(seq))
    ]


def _rayleigh_sym(K: int) -> list[TPoly]:
    return [TPoly.monomial(k // 2, factorial(k // 2)) if k % 2 == 0 else TPoly() for k in range(K + 1)]


_ORACLES = {
    LawId.GAUSSIAN: _gaussian,
    LawId.POISSON: _poisson,
    LawId.BESSEL: _even_block_sum,
    LawId.SHIFTED_GAUSSIAN: lambda K: _shift(_gaussian(K)),
    LawId.SEMICIRCLE: _semicircle,
    LawId.FREE_POISSON: _narayana,
    LawId.FREE_BESSEL: _nc_even_block_sum,
    LawId.SHIFTED_SEMICIRCLE: lambda K: _shift(_semicircle(K)),
    LawId.RAYLEIGH_SYM: _rayleigh_sym,
}


def law_moments(law: LawId, K: int, t=None) -> MomentSequence:
    """Moments ``m_1..m_K`` of ``law`` as polynomials in ``t``, or as constants
    when a value of ``t`` is given."""
    if K > LAW_BOUND:
        raise ValueError(f"K={K} exceeds the bound {LAW_BOUND}")
    if law in _ORACLES:
        seq = _ORACLES[law](K)
    else:
        seq = _ORACLES[law.base](K)
        seq = [m if k % 2 == 0 else TPoly() for k, m in enumerate(seq)]
    if t is not None:
        seq = [TPoly.constant(m(t)) for m in seq]
    return MomentSequence(law.kind, tuple(seq[1:]))


CATEGORY_LAW = {
    CategoryId.O: LawId.GAUSSIAN,
    CategoryId.S: LawId.POISSON,
    CategoryId.H: LawId.BESSEL,
    CategoryId.B: LawId.SHIFTED_GAUSSIAN,
    CategoryId.S_PRIME: LawId.POISSON_SYM,
    CategoryId.B_PRIME: LawId.SHIFTED_GAUSSIAN_SYM,
    CategoryId.O_PLUS: LawId.SEMICIRCLE,
    CategoryId.S_PLUS: LawId.FREE_POISSON,
    CategoryId.H_PLUS: LawId.FREE_BESSEL,
    CategoryId.B_PLUS: LawId.SHIFTED_SEMICIRCLE,
    CategoryId.S_PRIME_PLUS: LawId.FREE_POISSON_SYM,
    CategoryId.B_PRIME_PLUS: LawId.SHIFTED_SEMICIRCLE_SYM,
    CategoryId.O_STAR: LawId.RAYLEIGH_SYM,
}


def side_of(c: CategoryId) -> Kind:
    if c is CategoryId.O_STAR:
        raise ValueError("O* is neither on the classical nor on the free side")
    return Kind.FREE if c.is_noncrossing else Kind.CLASSICAL


def character_moments(c: CategoryId, K: int, kind: Kind | None = None) -> MomentSequence:
    """Asymptotic truncated-character moments ``m_1..m_K`` of ``c``."""
    from .weingarten import char_moment_asymptotic

    kind = kind or side_of(c)
    return MomentSequence(kind, tuple(char_moment_asymptotic(c, k) for k in range(1, K + 1)))


def dilate(p: TPoly, factor) -> TPoly:
    """``p(factor * t)``."""
    f = Fraction(factor)
    return TPoly(tuple((e, c * f**e) for e, c in p.terms))


def is_additive(kappa: Sequence[TPoly]) -> bool:
    """``κ(s) + κ(t) = κ(s + t)`` as a polynomial identity in ``s, t``.

    Expanding ``(s+t)^e`` leaves only the pure terms for ``e = 1``; mixed
    monomials ``s^a t^b`` survive for every ``e >= 2`` with a nonzero
    coefficient, and the constant term appears once on the right but twice
    on the left.
    """
    for c in kappa:
        lhs: dict[tuple[int, int], Fraction] = {}
        for e, a in c.terms:
            lhs[(e, 0)] = lhs.get((e, 0), 0) + a
            lhs[(0, e)] = lhs.get((0, e), 0) + a
        rhs: dict[tuple[int, int], Fraction] = {}
        for e, a in c.terms:
            for r in range(e + 1):
                rhs[(r, e - r)] = rhs.get((r, e - r), 0) + a * comb(e, r)
        keys = set(lhs) | set(rhs)
        if any(lhs.get(x, 0) != rhs.get(x, 0) for x in keys):
            return False
    return True


@dataclass(frozen=True)
class Verdict:
    category: CategoryId
    kind: Kind
    semigroup: bool
    cumulants: tuple[TPoly, ...]
    certificate: tuple[int, TPoly] | None = None

    def to_json(self) -> dict:
        out = {
            "category": self.category.label,
            "kind": self.kind.value,
            "verdict": "SEMIGROUP" if self.semigroup else "NOT-SEMIGROUP",
            "cumulants": [c.to_json() for c in self.cumulants],
        }
        if self.certificate is not None:
            s, c = self.certificate
            out["certificate"] = {"index": s, "cumulant": c.to_json(), "text": str(c)}
        return out


def semigroup_verdict(c: CategoryId, K: int = 8) -> Verdict:
    """Cumulants of the asymptotic character law of ``c`` on its own side
    (classical or free); a semigroup iff every cumulant is linear in ``t``."""
    kind = side_of(c)
    kappa = cumulants_from_moments(character_moments(c, K, kind)).entries
    bad = next(((s, x) for s, x in enumerate(kappa, start=1) if not x.is_linear_homogeneous()), None)
    return Verdict(c, kind, bad is None and is_additive(kappa), kappa, bad)
