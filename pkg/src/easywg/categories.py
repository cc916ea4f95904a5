"""Named categories of partitions and their membership predicates.

Thirteen categories are exposed: the six classical ones (with the basic
crossing), their six noncrossing versions, and the half-liberated category
``O*`` of pairings in which every string crosses an even number of others.
"""

from __future__ import annotations

import enum
from typing import Callable

from .partition import (
    Partition,
    block_sizes,
    crossing_parities,
    enumerate_partitions,
    is_noncrossing,
    DEFAULT_ENUMERATION_BOUND,
)

__all__ = [
    "BlockSizeSet",
    "CategoryId",
    "CLASSICAL",
    "NONCROSSING",
    "ALL_CATEGORIES",
    "parse_category",
    "contains",
    "predicate",
    "enumerate_category",
    "even_part",
    "nc_of",
    "classical_of",
]


class BlockSizeSet(enum.Enum):
    """The four admissible sets ``L`` of allowed block sizes."""

    PAIRS = "{2}"
    ALL = "all"
    EVEN = "even"
    SINGLETONS_AND_PAIRS = "{1,2}"

    def allows(self, size: int) -> bool:
        if self is BlockSizeSet.PAIRS:
            return size == 2
        if self is BlockSizeSet.ALL:
            return size >= 1
        if self is BlockSizeSet.EVEN:
            return size >= 2 and size % 2 == 0
        return size in (1, 2)

    @property
    def max_block(self) -> int | None:
        return {BlockSizeSet.PAIRS: 2, BlockSizeSet.SINGLETONS_AND_PAIRS: 2}.get(self)


class CategoryId(enum.Enum):
    O = "o"
    S = "s"
    H = "h"
    B = "b"
    S_PRIME = "s'"
    B_PRIME = "b'"
    O_PLUS = "o+"
    S_PLUS = "s+"
    H_PLUS = "h+"
    B_PLUS = "b+"
    S_PRIME_PLUS = "s'+"
    B_PRIME_PLUS = "b'+"
    O_STAR = "o*"

    @property
    def label(self) -> str:
        """Display name, e.g. ``O``, ``S'+``, ``O*``."""
        return self.value.upper()

    @property
    def is_classical(self) -> bool:
        return self in CLASSICAL

    @property
    def is_noncrossing(self) -> bool:
        return self in NONCROSSING

    @property
    def base(self) -> str:
        """Group letter without the liberation suffix: ``o s h b s' b'``."""
        return self.value.rstrip("+*")

    @property
    def block_sizes(self) -> BlockSizeSet:
        return _BASE_BLOCKS[self.base]

    @property
    def even_only(self) -> bool:
        return self.base in ("s'", "b'")

    @property
    def slug(self) -> str:
        """Filesystem-safe name."""
        return self.value.replace("'", "_prime").replace("+", "_plus").replace("*", "_star")


CLASSICAL = (
    CategoryId.O,
    CategoryId.S,
    CategoryId.H,
    CategoryId.B,
    CategoryId.S_PRIME,
    CategoryId.B_PRIME,
)
NONCROSSING = (
    CategoryId.O_PLUS,
    CategoryId.S_PLUS,
    CategoryId.H_PLUS,
    CategoryId.B_PLUS,
    CategoryId.S_PRIME_PLUS,
    CategoryId.B_PRIME_PLUS,
)
ALL_CATEGORIES = CLASSICAL + NONCROSSING + (CategoryId.O_STAR,)

_BASE_BLOCKS = {
    "o": BlockSizeSet.PAIRS,
    "s": BlockSizeSet.ALL,
    "h": BlockSizeSet.EVEN,
    "b": BlockSizeSet.SINGLETONS_AND_PAIRS,
    "s'": BlockSizeSet.ALL,
    "b'": BlockSizeSet.SINGLETONS_AND_PAIRS,
}

_ALIASES = {
    "o_star": "o*",
    "ostar": "o*",
    "s_prime": "s'",
    "b_prime": "b'",
}


def parse_category(name: str) -> CategoryId:
    """Accepts ``o s h b s' b'``, a ``+`` suffix, and ``o*`` (case-insensitive)."""
    key = name.strip().lower()
    if key.endswith("_plus"):
        key = key[: -len("_plus")] + "+"
    head = key.rstrip("+")
    key = _ALIASES.get(head, head) + key[len(head) :]
    try:
        return CategoryId(key)
    except ValueError:
        names = ", ".join(c.value for c in ALL_CATEGORIES)
        raise ValueError(f"unknown category {name!r}; expected one of {names}") from None


def _block_rule(c: CategoryId, p: Partition) -> bool:
    allowed = c.block_sizes
    if not all(allowed.allows(s) for s in block_sizes(p)):
        return False
    # even part: k+l even, i.e. an even number of odd blocks
    return not c.even_only or p.size % 2 == 0


def contains(c: CategoryId, p: Partition) -> bool:
    if c is CategoryId.O_STAR:
        return p.is_pairing and not any(crossing_parities(p).values())
    if not _block_rule(c, p):
        return False
    return not c.is_noncrossing or is_noncrossing(p)


def predicate(c: CategoryId) -> Callable[[Partition], bool]:
    return lambda p: contains(c, p)


def enumerate_category(
    c: CategoryId, k: int, l: int, *, bound: int = DEFAULT_ENUMERATION_BOUND
) -> list[Partition]:
    """Members of ``c`` in ``P(k, l)``, in canonical (lexicographic) order."""
    return enumerate_partitions(
        k, l, predicate(c), max_block=c.block_sizes.max_block, bound=bound
    )


def even_part(pred: Callable[[Partition], bool]) -> Callable[[Partition], bool]:
    """Restrict a membership predicate to partitions with ``k + l`` even."""
    return lambda p: p.size % 2 == 0 and pred(p)


def nc_of(c: CategoryId) -> CategoryId:
    if not c.is_classical:
        raise ValueError(f"{c.label} is not a classical category")
    return CategoryId(c.value + "+")


def classical_of(c: CategoryId) -> CategoryId:
    if not c.is_noncrossing:
        raise ValueError(f"{c.label} is not a noncrossing category")
    return CategoryId(c.value[:-1])
