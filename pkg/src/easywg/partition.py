"""Two-row set partitions and their calculus.

A partition ``p`` in ``P(k, l)`` partitions ``k`` upper points and ``l`` lower
points.  Points are numbered ``1..k`` on the upper row and ``k+1..k+l`` on the
lower row, both left to right.  Internally a partition is stored as a
restricted growth string: one block label per point, labels assigned in order
of first occurrence.  That string is the canonical form, so two partitions are
equal exactly when their dataclass fields are equal.

The text notation is ``"UPPER/LOWER"``: one letter per point, equal letters
mean the same block, e.g. ``"/aa"`` is the duality partition and
``"ab/ba"`` is the basic crossing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

__all__ = [
    "Partition",
    "PartitionError",
    "ParseError",
    "CompositionError",
    "RotationError",
    "EnumerationBoundError",
    "parse",
    "format_partition",
    "tensor",
    "compose",
    "involution",
    "rotate",
    "one_line",
    "join",
    "block_count",
    "block_sizes",
    "is_noncrossing",
    "crossing_parities",
    "delta",
    "enumerate_partitions",
    "iter_partitions",
    "one_block",
    "EMPTY",
    "UNIT",
    "DUALITY",
    "CROSSING",
    "SINGLETON",
]

DEFAULT_ENUMERATION_BOUND = 14


class PartitionError(ValueError):
    """Base class for invalid partition operations."""


class ParseError(PartitionError):
    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        super().__init__(f"cannot parse {text!r} at position {position}: {reason}")


class CompositionError(PartitionError):
    pass


class RotationError(PartitionError):
    pass


class EnumerationBoundError(PartitionError):
    pass


def _canonical_labels(labels: Sequence) -> tuple[int, ...]:
    seen: dict = {}
    out = []
    for x in labels:
        if x not in seen:
            seen[x] = len(seen)
        out.append(seen[x])
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    """A partition of ``upper`` upper points and ``lower`` lower points.

    Build instances with :meth:`from_labels` or :func:`parse`; the raw
    constructor expects ``labels`` to already be a restricted growth string.
    """

    upper: int
    lower: int
    labels: tuple[int, ...]

    def __post_init__(self):
        if self.upper < 0 or self.lower < 0:
            raise PartitionError("row sizes must be nonnegative")
        if len(self.labels) != self.upper + self.lower:
            raise PartitionError(
                f"expected {self.upper + self.lower} labels, got {len(self.labels)}"
            )
        if _canonical_labels(self.labels) != tuple(self.labels):
            raise PartitionError(f"labels {self.labels} are not in canonical form")

    @classmethod
    def from_labels(cls, upper: int, lower: int, labels: Sequence) -> "Partition":
        """Canonicalize arbitrary hashable block labels into a partition."""
        return cls(upper, lower, _canonical_labels(labels))

    @classmethod
    def from_blocks(cls, upper: int, lower: int, blocks) -> "Partition":
        """Build from blocks given as collections of 1-based point numbers."""
        size = upper + lower
        labels: list = [None] * size
        for b, block in enumerate(blocks):
            if not block:
                raise PartitionError("blocks must be nonempty")
            for point in block:
                if not 1 <= point <= size or labels[point - 1] is not None:
                    raise PartitionError(f"point {point} is out of range or repeated")
                labels[point - 1] = b
        if any(x is None for x in labels):
            raise PartitionError("blocks do not cover every point")
        return cls.from_labels(upper, lower, labels)

    @property
    def size(self) -> int:
        return self.upper + self.lower

    @property
    def upper_labels(self) -> tuple[int, ...]:
        return self.labels[: self.upper]

    @property
    def lower_labels(self) -> tuple[int, ...]:
        return self.labels[self.upper :]

    @property
    def num_blocks(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Blocks as tuples of 1-based point numbers, ordered by minimal element."""
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for point, b in enumerate(self.labels, start=1):
            out[b].append(point)
        return tuple(tuple(b) for b in out)

    @property
    def is_pairing(self) -> bool:
        return all(s == 2 for s in block_sizes(self))

    def __str__(self) -> str:
        return format_partition(self)

    def __repr__(self) -> str:
        return f"Partition({format_partition(self)!r})"


_LETTERS = "abcdefghijklmnopqrstuvwxyz"
_WORD = re.compile(r"[a-z]*")


def parse(text: str) -> Partition:
    head, sep, tail = text.partition("/")
    if not sep:
        raise ParseError(text, len(text), "missing '/' between the rows")
    for offset, side in ((0, head), (len(head) + 1, tail)):
        matched = _WORD.match(side).end()
        if matched != len(side):
            pos = offset + matched
            reason = "second '/'" if side[matched] == "/" else f"unexpected character {side[matched]!r}"
            raise ParseError(text, pos, reason)
    return Partition.from_labels(len(head), len(tail), head + tail)


def format_partition(p: Partition) -> str:
    if p.num_blocks > len(_LETTERS):
        raise PartitionError(f"{p.num_blocks} blocks exceed the 26-letter notation")
    word = "".join(_LETTERS[x] for x in p.labels)
    return word[: p.upper] + "/" + word[p.upper :]


def one_block(m: int) -> Partition:
    """The one-block partition ``b_m`` in ``P(0, m)``."""
    return Partition(0, m, (0,) * m)


EMPTY = Partition(0, 0, ())
UNIT = parse("a/a")
DUALITY = parse("/aa")
CROSSING = parse("ab/ba")
SINGLETON = parse("/a")


def tensor(p: Partition, q: Partition) -> Partition:
    """Horizontal concatenation: ``p`` on the left, ``q`` on the right."""
    shift = p.num_blocks
    ql = [x + shift for x in q.labels]
    labels = (
        list(p.upper_labels) + ql[: q.upper] + list(p.lower_labels) + ql[q.upper :]
    )
    return Partition.from_labels(p.upper + q.upper, p.lower + q.lower, labels)


def compose(p: Partition, q: Partition) -> tuple[Partition, int]:
    """Vertical concatenation ``pq``: ``q`` on top, its lower row glued to the
    upper row of ``p``.

    Returns the composite in ``P(q.upper, p.lower)`` and the number of closed
    blocks removed.
    """
    if p.upper != q.lower:
        raise CompositionError(
            f"cannot compose {p} with {q}: {p.upper} upper points vs {q.lower} lower points"
        )
    nq = q.num_blocks
    parent = list(range(nq + p.num_blocks))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in zip(q.lower_labels, p.upper_labels):
        ra, rb = find(a), find(nq + b)
        if ra != rb:
            parent[ra] = rb
    outer = [find(x) for x in q.upper_labels] + [find(nq + x) for x in p.lower_labels]
    roots = {find(x) for x in range(len(parent))}
    closed = len(roots - set(outer))
    return Partition.from_labels(q.upper, p.lower, outer), closed


def involution(p: Partition) -> Partition:
    """Upside-down turn; swaps the rows."""
    return Partition.from_labels(p.lower, p.upper, p.lower_labels + p.upper_labels)


def rotate(p: Partition, direction: str = "left") -> Partition:
    """Move a single point around the left end of the diagram.

    ``"left"`` moves the leftmost upper point to the leftmost lower position;
    ``"right"`` is its inverse.
    """
    up, low = list(p.upper_labels), list(p.lower_labels)
    if direction == "left":
        if not up:
            raise RotationError(f"{p} has no upper point to rotate down")
        return Partition.from_labels(p.upper - 1, p.lower + 1, up[1:] + up[:1] + low)
    if direction == "right":
        if not low:
            raise RotationError(f"{p} has no lower point to rotate up")
        return Partition.from_labels(p.upper + 1, p.lower - 1, low[:1] + up + low[1:])
    raise ValueError(f"unknown rotation direction {direction!r}")


def one_line(p: Partition) -> Partition:
    """Rotate all upper points down: the one-line form in ``P(0, k+l)``.

    Equivalent to ``p.upper`` left rotations; the upper row lands reversed in
    front of the lower row.
    """
    labels = list(reversed(p.upper_labels)) + list(p.lower_labels)
    return Partition.from_labels(0, p.size, labels)


def join(p: Partition, q: Partition) -> Partition:
    """Finest partition coarser than both ``p`` and ``q``."""
    if (p.upper, p.lower) != (q.upper, q.lower):
        raise PartitionError(f"shape mismatch: {p} vs {q}")
    parent = list(range(p.size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for labels in (p.labels, q.labels):
        first: dict[int, int] = {}
        for point, b in enumerate(labels):
            if b in first:
                ra, rb = find(point), find(first[b])
                if ra != rb:
                    parent[ra] = rb
            else:
                first[b] = point
    return Partition.from_labels(p.upper, p.lower, [find(x) for x in range(p.size)])


def block_count(p: Partition) -> int:
    return p.num_blocks


def block_sizes(p: Partition) -> tuple[int, ...]:
    """Block sizes, sorted in decreasing order."""
    counts = [0] * p.num_blocks
    for b in p.labels:
        counts[b] += 1
    return tuple(sorted(counts, reverse=True))


def _blocks_cross(x: Sequence[int], y: Sequence[int]) -> bool:
    # x, y sorted point lists; they cross iff some gap of x separates points of y
    for lo, hi in zip(x, x[1:]):
        inside = [lo < v < hi for v in y]
        if any(inside) and not all(inside):
            return True
    return False


def _line_blocks(p: Partition) -> list[list[int]]:
    q = one_line(p)
    out: list[list[int]] = [[] for _ in range(q.num_blocks)]
    for point, b in enumerate(q.labels):
        out[b].append(point)
    return out


def is_noncrossing(p: Partition) -> bool:
    blocks = _line_blocks(p)
    return not any(
        _blocks_cross(blocks[a], blocks[b])
        for a in range(len(blocks))
        for b in range(a + 1, len(blocks))
    )


def crossing_parities(p: Partition) -> dict[tuple[int, ...], int]:
    """Parity (0 even, 1 odd) of the number of strings crossing each string.

    Keys are the blocks of ``p`` as 1-based point tuples.  Counts are taken on
    the one-line form.
    """
    if not p.is_pairing:
        raise PartitionError(f"{p} is not a pairing")
    # one-line position -> original point: reversed upper row, then lower row
    original = list(range(p.upper, 0, -1)) + list(range(p.upper + 1, p.size + 1))
    strings = _line_blocks(p)
    out = {}
    for a, (x1, x2) in enumerate(strings):
        crossings = sum(
            1
            for b, (y1, y2) in enumerate(strings)
            if b != a and (x1 < y1 < x2) != (x1 < y2 < x2)
        )
        key = tuple(sorted((original[x1], original[x2])))
        out[key] = crossings % 2
    return out


def delta(p: Partition, i: Sequence[int], j: Sequence[int], n: int) -> int:
    """1 if the multi-indices ``i`` (upper) and ``j`` (lower) are constant on
    every block of ``p``, else 0.  Indices run over ``1..n``."""
    if len(i) != p.upper or len(j) != p.lower:
        raise PartitionError(
            f"{p} needs indices of lengths ({p.upper}, {p.lower}), got ({len(i)}, {len(j)})"
        )
    values = list(i) + list(j)
    if any(not 1 <= v <= n for v in values):
        raise PartitionError(f"indices must lie in 1..{n}")
    seen: dict[int, int] = {}
    for b, v in zip(p.labels, values):
        if seen.setdefault(b, v) != v:
            return 0
    return 1


def iter_partitions(
    k: int,
    l: int,
    predicate: Callable[[Partition], bool] | None = None,
    *,
    max_block: int | None = None,
    bound: int = DEFAULT_ENUMERATION_BOUND,
) -> Iterator[Partition]:
    """Yield the partitions of ``P(k, l)`` in lexicographic order of their words.

    ``max_block`` prunes the search to blocks of at most that size; it is an
    optimization only, ``predicate`` decides membership.
    """
    m = k + l
    if k < 0 or l < 0:
        raise PartitionError("row sizes must be nonnegative")
    if m > bound:
        raise EnumerationBoundError(f"{m} points exceed the enumeration bound {bound}")
    word = [0] * m
    sizes = [0] * (m + 1)

    def rec(pos: int, nblocks: int):
        if pos == m:
            p = Partition(k, l, tuple(word))
            if predicate is None or predicate(p):
                yield p
            return
        for b in range(nblocks + 1):
            if max_block is not None and sizes[b] >= max_block:
                continue
            word[pos] = b
            sizes[b] += 1
            yield from rec(pos + 1, max(nblocks, b + 1))
            sizes[b] -= 1

    yield from rec(0, 0)


def enumerate_partitions(
    k: int,
    l: int,
    predicate: Callable[[Partition], bool] | None = None,
    *,
    max_block: int | None = None,
    bound: int = DEFAULT_ENUMERATION_BOUND,
) -> list[Partition]:
    return list(iter_partitions(k, l, predicate, max_block=max_block, bound=bound))
