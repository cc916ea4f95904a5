"""Polynomials in the truncation parameter ``t`` with rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = ["TPoly", "as_tpoly", "T"]

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class TPoly:
    """Sparse polynomial: ``terms`` holds ``(power, coefficient)`` pairs with
    nonzero coefficients, sorted by power."""

    terms: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        acc: dict[int, Fraction] = {}
        for power, coeff in self.terms:
            if power < 0:
                raise ValueError("negative powers are not polynomials")
            acc[int(power)] = acc.get(int(power), Fraction(0)) + Fraction(coeff)
        object.__setattr__(
            self, "terms", tuple(sorted((p, c) for p, c in acc.items() if c != 0))
        )

    @classmethod
    def from_coeffs(cls, coeffs: Mapping[int, Scalar] | Iterable[Scalar]) -> "TPoly":
        """From a ``{power: coeff}`` map or a dense list starting at ``t^0``."""
        if isinstance(coeffs, Mapping):
            return cls(tuple(coeffs.items()))
        return cls(tuple(enumerate(coeffs)))

    @classmethod
    def constant(cls, c: Scalar) -> "TPoly":
        return cls(((0, Fraction(c)),))

    @classmethod
    def monomial(cls, power: int, coeff: Scalar = 1) -> "TPoly":
        return cls(((power, Fraction(coeff)),))

    def coeff(self, power: int) -> Fraction:
        return dict(self.terms).get(power, Fraction(0))

    @property
    def degree(self) -> int:
        return self.terms[-1][0] if self.terms else -1

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_linear_homogeneous(self) -> bool:
        """True for ``c * t`` (including 0)."""
        return all(p == 1 for p, _ in self.terms)

    def __call__(self, t: Scalar) -> Fraction:
        x = Fraction(t)
        return sum((c * x**p for p, c in self.terms), Fraction(0))

    def __add__(self, other) -> "TPoly":
        o = as_tpoly(other)
        return TPoly(self.terms + o.terms)

    __radd__ = __add__

    def __neg__(self) -> "TPoly":
        return TPoly(tuple((p, -c) for p, c in self.terms))

    def __sub__(self, other) -> "TPoly":
        return self + (-as_tpoly(other))

    def __rsub__(self, other) -> "TPoly":
        return as_tpoly(other) - self

    def __mul__(self, other) -> "TPoly":
        o = as_tpoly(other)
        return TPoly(tuple((p + q, a * b) for p, a in self.terms for q, b in o.terms))

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "TPoly":
        s = Fraction(scalar)
        return TPoly(tuple((p, c / s) for p, c in self.terms))

    def __pow__(self, e: int) -> "TPoly":
        out = TPoly.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        try:
            o = as_tpoly(other)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(self.terms)

    def to_json(self) -> dict[str, str]:
        return {str(p): str(c) for p, c in self.terms}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "TPoly":
        return cls(tuple((int(p), Fraction(c)) for p, c in data.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for p, c in self.terms:
            mono = "" if p == 0 else ("t" if p == 1 else f"t^{p}")
            mag = abs(c)
            body = mono if mono and mag == 1 else f"{mag}{'*' + mono if mono else ''}"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"TPoly({self})"


def as_tpoly(x) -> TPoly:
    if isinstance(x, TPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return TPoly.constant(x)
    raise TypeError(f"cannot interpret {x!r} as a polynomial in t")


T = TPoly.monomial(1)
