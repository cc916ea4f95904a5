"""Bounded generation of categories of partitions.

Every category is closed under rotation, so membership of ``p`` only depends
on its one-line form ``one_line(p)``.  The engine therefore works on one-line
partitions and implements composition as *gluing*: two one-line partitions
are placed side by side and the last ``c`` points of the first are identified
with the first ``c`` points of the second in nested order (``c = 0`` is the
tensor product).  Blocks that lose all their points are closed and dropped.

Two symmetry modes keep the search small:

* without the crossing axiom, elements are stored up to rotation and
  reflection (the latter is the involution);
* with the crossing axiom, adjacent transpositions are available (glue with
  the crossing), so elements are stored up to arbitrary permutations of their
  points, i.e. by their multiset of block sizes.

The fixpoint only ever holds partitions with at most ``point_bound`` points,
and only combines inputs within that bound, so it under-approximates the true
category restricted to the bound.  ``truncated`` records whether some
combination was discarded for exceeding the bound.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .categories import (
    ALL_CATEGORIES,
    CLASSICAL,
    NONCROSSING,
    CategoryId,
    enumerate_category,
    nc_of,
)
from .partition import (
    CROSSING,
    Partition,
    format_partition,
    is_noncrossing,
    iter_partitions,
    one_block,
    one_line,
)

__all__ = [
    "ClosureSpec",
    "ClosureResult",
    "closure",
    "identify",
    "ClassificationEntry",
    "ClassificationReport",
    "verify_classification",
    "block_conditions",
    "regenerate",
    "classify",
    "dihedral_key",
    "type_key",
]

SYMMETRIC = "symmetric"
DIHEDRAL = "dihedral"


@dataclass(frozen=True)
class ClosureSpec:
    generators: tuple[Partition, ...] = ()
    crossing: bool = True
    point_bound: int = 6

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        largest = max((p.size for p in self.generators), default=0)
        if self.point_bound < largest:
            raise ValueError(
                f"point_bound {self.point_bound} is smaller than a generator of size {largest}"
            )


def _rgs(word: Iterable) -> tuple[int, ...]:
    seen: dict = {}
    return tuple(seen.setdefault(x, len(seen)) for x in word)


@lru_cache(maxsize=None)
def dihedral_key(word: tuple[int, ...]) -> tuple[int, ...]:
    """Least relabelled word among all rotations and reflections."""
    m = len(word)
    if m == 0:
        return ()
    best = None
    for w in (word, word[::-1]):
        for r in range(m):
            cand = _rgs(w[r:] + w[:r])
            if best is None or cand < best:
                best = cand
    return best


def type_key(word: Sequence[int]) -> tuple[int, ...]:
    counts: dict[int, int] = {}
    for x in word:
        counts[x] = counts.get(x, 0) + 1
    return tuple(sorted(counts.values(), reverse=True))


def _dihedral_variants(key: tuple[int, ...], reflect: bool) -> list[tuple[int, ...]]:
    m = len(key)
    words = {key[r:] + key[:r] for r in range(m)} or {()}
    if reflect:
        rev = key[::-1]
        words |= {rev[r:] + rev[:r] for r in range(m)}
    return sorted(words)


def _glue_words(x: Sequence[int], y: Sequence[int], c: int) -> tuple[int, ...]:
    bx = max(x) + 1 if x else 0
    by = max(y) + 1 if y else 0
    parent = list(range(bx + by))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i in range(1, c + 1):
        a, b = find(x[-i]), find(bx + y[i - 1])
        if a != b:
            parent[a] = b
    rest = [find(v) for v in x[: len(x) - c]] + [find(bx + v) for v in y[c:]]
    return _rgs(rest)


class _DihedralEngine:
    mode = DIHEDRAL

    def __init__(self, bound: int):
        self.bound = bound
        self.truncated = False
        self._rot: dict = {}
        self._rotref: dict = {}

    def key(self, p: Partition) -> tuple[int, ...]:
        return dihedral_key(one_line(p).labels)

    def combine(self, x: tuple[int, ...], y: tuple[int, ...]) -> set:
        m1, m2 = len(x), len(y)
        if x not in self._rot:
            self._rot[x] = _dihedral_variants(x, False)
        if y not in self._rotref:
            self._rotref[y] = _dihedral_variants(y, True)
        out = set()
        for c in range(min(m1, m2) + 1):
            if m1 + m2 - 2 * c > self.bound:
                self.truncated = True
                continue
            for xr in self._rot[x]:
                for yr in self._rotref[y]:
                    out.add(dihedral_key(_glue_words(xr, yr, c)))
        return out


class _SymmetricEngine:
    mode = SYMMETRIC

    def __init__(self, bound: int):
        self.bound = bound
        self.truncated = False

    def key(self, p: Partition) -> tuple[int, ...]:
        return type_key(p.labels)

    def combine(self, x: tuple[int, ...], y: tuple[int, ...]) -> set:
        # each component tracks (points left from x, points left from y)
        m1, m2 = sum(x), sum(y)
        state = tuple(sorted([(s, 0) for s in x] + [(0, s) for s in y]))
        states = {state}
        out = set()
        for c in range(min(m1, m2) + 1):
            if c:
                states = {nxt for st in states for nxt in _glue_step(st)}
            if m1 + m2 - 2 * c > self.bound:
                self.truncated = True
                continue
            for st in states:
                out.add(tuple(sorted((a + b for a, b in st), reverse=True)))
        return out


def _glue_step(state: tuple[tuple[int, int], ...]):
    n = len(state)
    for i in range(n):
        if state[i][0] == 0 or (i and state[i] == state[i - 1]):
            continue
        for j in range(n):
            if state[j][1] == 0 or (j and state[j] == state[j - 1] and j - 1 != i):
                continue
            if i == j:
                merged = (state[i][0] - 1, state[i][1] - 1)
                rest = state[:i] + state[i + 1 :]
            else:
                merged = (state[i][0] + state[j][0] - 1, state[i][1] + state[j][1] - 1)
                rest = tuple(s for t, s in enumerate(state) if t not in (i, j))
            if merged != (0, 0):
                rest = rest + (merged,)
            yield tuple(sorted(rest))


@dataclass(frozen=True)
class ClosureResult:
    spec: ClosureSpec
    mode: str
    keys: frozenset
    truncated: bool

    @property
    def point_bound(self) -> int:
        return self.spec.point_bound

    def _key(self, p: Partition):
        word = one_line(p).labels
        return type_key(word) if self.mode == SYMMETRIC else dihedral_key(word)

    def contains(self, p: Partition) -> bool:
        return p.size <= self.point_bound and self._key(p) in self.keys

    def __contains__(self, p: Partition) -> bool:
        return self.contains(p)

    def one_line_members(self, m: int) -> list[Partition]:
        """Members in ``P(0, m)``, in canonical order."""
        if m > self.point_bound:
            return []
        if self.mode == SYMMETRIC:
            return [p for p in iter_partitions(0, m) if type_key(p.labels) in self.keys]
        words = set()
        for key in self.keys:
            if len(key) == m:
                words.update(_rgs(w) for w in _dihedral_variants(key, True))
        return [Partition(0, m, w) for w in sorted(words)]

    def members(self, k: int, l: int) -> list[Partition]:
        if k + l > self.point_bound:
            return []
        return [p for p in iter_partitions(k, l) if self.contains(p)]

    @property
    def size(self) -> int:
        """Number of one-line members with at most ``point_bound`` points."""
        return sum(len(self.one_line_members(m)) for m in range(self.point_bound + 1))


def closure(spec: ClosureSpec) -> ClosureResult:
    """Least bounded fixpoint containing the generators, ``|`` and ``⊓``, and the
    crossing when the crossing axiom is on."""
    bound = spec.point_bound
    if spec.crossing and bound >= CROSSING.size:
        engine = _SymmetricEngine(bound)
    else:
        engine = _DihedralEngine(bound)
        if spec.crossing:
            # the crossing itself does not fit under the bound
            engine.truncated = True
    known = {engine.key(Partition(0, 0, ())), (0, 0) if engine.mode == DIHEDRAL else (2,)}
    known.update(engine.key(p) for p in spec.generators)
    universe = _universe_size(engine.mode, bound, spec.generators, spec.crossing)
    queue = deque(sorted(known))
    processed: list = []
    # once every reachable key is known the remaining pairs cannot add anything
    while queue and len(known) != universe:
        e = queue.popleft()
        processed.append(e)
        for f in processed:
            for r in engine.combine(e, f):
                if r not in known:
                    known.add(r)
                    queue.append(r)
    return ClosureResult(spec, engine.mode, frozenset(known), engine.truncated)


def _universe_size(mode: str, bound: int, generators, crossing: bool) -> int | None:
    """Number of keys the closure can possibly reach, if cheap to know."""
    if mode == SYMMETRIC:
        return sum(_integer_partition_count(m) for m in range(bound + 1))
    if bound > 10:
        return None
    if not crossing and all(is_noncrossing(p) for p in generators):
        return len(_nc_keys(bound))
    return len(_all_dihedral_keys(bound))


@lru_cache(maxsize=None)
def _integer_partition_count(m: int, largest: int | None = None) -> int:
    largest = m if largest is None else largest
    if m == 0:
        return 1
    return sum(_integer_partition_count(m - j, j) for j in range(1, min(m, largest) + 1))


@lru_cache(maxsize=None)
def _nc_keys(bound: int) -> frozenset:
    return frozenset(
        dihedral_key(p.labels)
        for m in range(bound + 1)
        for p in iter_partitions(0, m, is_noncrossing)
    )


@lru_cache(maxsize=None)
def _all_dihedral_keys(bound: int) -> frozenset:
    return frozenset(
        dihedral_key(p.labels) for m in range(bound + 1) for p in iter_partitions(0, m)
    )


@lru_cache(maxsize=None)
def _category_words(c: CategoryId, m: int) -> frozenset:
    return frozenset(p.labels for p in enumerate_category(c, 0, m))


def identify(result: ClosureResult, candidates: Sequence[CategoryId] = ALL_CATEGORIES) -> list[CategoryId]:
    """Named categories whose restriction to the bound equals the closure."""
    bound = result.point_bound
    mine = [frozenset(p.labels for p in result.one_line_members(m)) for m in range(bound + 1)]
    return [
        c
        for c in candidates
        if all(mine[m] == _category_words(c, m) for m in range(bound + 1))
    ]


@dataclass(frozen=True)
class ClassificationEntry:
    generator: Partition
    identified_as: CategoryId | None
    matches: tuple[CategoryId, ...]
    closure_size: int
    truncated: bool

    @property
    def o_star_flagged(self) -> bool:
        return self.identified_as is CategoryId.O_STAR

    def to_json(self, crossing: bool, bound: int) -> dict:
        return {
            "generator": format_partition(self.generator),
            "axiom_set": "with-crossing" if crossing else "without-crossing",
            "bound": bound,
            "identified_as": self.identified_as.label if self.identified_as else "unidentified",
            "matches": [c.label for c in self.matches],
            "closure_size": self.closure_size,
            "truncated": self.truncated,
        }


@dataclass
class ClassificationReport:
    point_bound: int
    crossing: bool
    entries: list[ClassificationEntry] = field(default_factory=list)

    @property
    def all_identified(self) -> bool:
        return all(e.identified_as is not None for e in self.entries)

    @property
    def unidentified(self) -> list[ClassificationEntry]:
        return [e for e in self.entries if e.identified_as is None]

    @property
    def o_star_flagged(self) -> list[ClassificationEntry]:
        return [e for e in self.entries if e.o_star_flagged]

    def categories_found(self) -> set[CategoryId]:
        return {e.identified_as for e in self.entries if e.identified_as is not None}

    def to_json(self) -> list[dict]:
        return [e.to_json(self.crossing, self.point_bound) for e in self.entries]


def _preference(crossing: bool) -> tuple[CategoryId, ...]:
    if crossing:
        return CLASSICAL
    return NONCROSSING + (CategoryId.O_STAR,) + CLASSICAL


def classify(generator: Partition, *, crossing: bool, point_bound: int) -> ClassificationEntry:
    result = closure(ClosureSpec((generator,), crossing, point_bound))
    return _entry(generator, result, crossing)


def _entry(generator: Partition, result: ClosureResult, crossing: bool) -> ClassificationEntry:
    order = _preference(crossing)
    matches = tuple(identify(result, order))
    return ClassificationEntry(
        generator,
        matches[0] if matches else None,
        matches,
        result.size,
        result.truncated,
    )


def verify_classification(
    point_bound: int, crossing: bool = True, *, noncrossing_only: bool | None = None
) -> ClassificationReport:
    """Close every single partition of at most ``point_bound`` points and
    identify the result among the named categories.

    Without the crossing axiom only noncrossing generators are used unless
    ``noncrossing_only=False``.
    """
    if noncrossing_only is None:
        noncrossing_only = not crossing
    report = ClassificationReport(point_bound, crossing)
    cache: dict = {}
    for m in range(point_bound + 1):
        for k in range(m + 1):
            for p in iter_partitions(k, m - k):
                if noncrossing_only and not is_noncrossing(p):
                    continue
                word = one_line(p).labels
                key = type_key(word) if crossing and point_bound >= 4 else dihedral_key(word)
                if key not in cache:
                    result = closure(ClosureSpec((p,), crossing, point_bound))
                    cache[key] = _entry(p, result, crossing)
                e = cache[key]
                report.entries.append(
                    ClassificationEntry(p, e.identified_as, e.matches, e.closure_size, e.truncated)
                )
    return report


def block_conditions(k: int, l: int, point_bound: int = 8) -> dict[str, bool]:
    """Check that a category containing ``b_k`` and ``b_l`` (``k > l``) also
    contains ``b_{k-l}`` and ``b_{2k-2}``."""
    if not k > l >= 1:
        raise ValueError("need k > l >= 1")
    result = closure(ClosureSpec((one_block(k), one_block(l)), True, point_bound))
    return {
        f"b_{k - l}": one_block(k - l) in result,
        f"b_{2 * k - 2}": one_block(2 * k - 2) in result,
    }


def regenerate(c: CategoryId, point_bound: int = 6, generator_bound: int = 4) -> bool:
    """Close the noncrossing version of ``c`` (up to ``generator_bound`` points)
    together with the crossing and compare with ``c`` up to ``point_bound``."""
    nc = nc_of(c)
    gens = [p for m in range(generator_bound + 1) for p in enumerate_category(nc, 0, m)]
    result = closure(ClosureSpec(tuple(gens) + (CROSSING,), True, point_bound))
    return c in identify(result, [c])
