"""The acceptance battery, shared by ``easy-wg verify`` and the test suite.

Each ``criterion_N`` returns a :class:`CriterionResult`; none of them raise on
a failed check.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .categories import (
    ALL_CATEGORIES,
    CLASSICAL,
    CategoryId,
    contains,
    enumerate_category,
    nc_of,
)
from .closure import ClosureSpec, block_conditions, closure, verify_classification
from .freeprob import (
    CATEGORY_LAW,
    Kind,
    bercovici_pata,
    character_moments,
    cumulants_from_moments,
    law_moments,
    semigroup_verdict,
)
from .haar import estimate_char_moment, estimate_integral
from .partition import (
    Partition,
    compose,
    enumerate_partitions,
    format_partition,
    involution,
    iter_partitions,
    one_line,
    parse,
    tensor,
)
from .tensor import rank_of_span, t_matrix
from .tpoly import T, TPoly
from .weingarten import (
    SingularGramError,
    char_moment_asymptotic,
    char_moment_exact,
    integrate,
    weingarten,
)

__all__ = ["CriterionResult", "CRITERIA", "run_all", "noncrossing_words", "battery"]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d}: {self.title} ({self.seconds:.1f}s) {self.detail}"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


CRITERIA: dict[int, tuple[str, Callable]] = {}


def _criterion(number: int, title: str):
    def wrap(fn):
        def run(**kwargs) -> CriterionResult:
            start = time.perf_counter()
            passed, detail = fn(**kwargs)
            return CriterionResult(number, title, bool(passed), detail, time.perf_counter() - start)

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        CRITERIA[number] = (title, run)
        return run

    return wrap


def _partitions_up_to(m: int) -> list[Partition]:
    return [p for size in range(m + 1) for k in range(size + 1) for p in iter_partitions(k, size - k)]


@_criterion(1, "functoriality of p -> T_p")
def criterion_1(max_points: int = 6, ns: tuple[int, ...] = (2, 3), **_) -> tuple[bool, str]:
    """Every partition involved (inputs and result) has at most ``max_points`` points."""
    parts = _partitions_up_to(max_points)
    by_size: dict[int, list[Partition]] = {}
    by_lower: dict[int, list[Partition]] = {}
    for p in parts:
        by_size.setdefault(p.size, []).append(p)
        by_lower.setdefault(p.lower, []).append(p)
    counts = {"tensor": 0, "composition": 0, "involution": 0}
    failures: list[str] = []
    composites = {}
    for p in parts:
        for q in by_lower.get(p.upper, []):
            if q.upper + p.lower <= max_points:
                composites[p, q] = compose(p, q)
    for n in ns:
        mats = {p: t_matrix(p, n) for p in parts}
        for p in parts:
            counts["involution"] += 1
            if not np.array_equal(mats[involution(p)], mats[p].T):
                failures.append(f"involution {p} n={n}")
        for p in parts:
            for size in range(max_points - p.size + 1):
                for q in by_size.get(size, []):
                    counts["tensor"] += 1
                    if not np.array_equal(mats[tensor(p, q)], np.kron(mats[p], mats[q])):
                        failures.append(f"tensor {p} {q} n={n}")
        # batch all q composable with a fixed p into one product
        for p in parts:
            qs = [q for q in by_lower.get(p.upper, []) if (p, q) in composites]
            if not qs:
                continue
            lhs = mats[p] @ np.hstack([mats[q] for q in qs])
            rhs = np.hstack([n ** composites[p, q][1] * mats[composites[p, q][0]] for q in qs])
            counts["composition"] += len(qs)
            if not np.array_equal(lhs, rhs):
                failures.append(f"composition with {p} n={n}")
    detail = ", ".join(f"{k} {v}" for k, v in counts.items()) + " checks"
    if failures:
        detail += "; failures: " + "; ".join(failures[:5])
    return not failures, detail


def noncrossing_words(m: int) -> set[tuple[int, ...]]:
    """Noncrossing partitions of ``m`` points in one line, built recursively
    from the block of the first point (independent of the crossing test)."""

    def build(points: list[int]) -> list[dict[int, int]]:
        if not points:
            return [{}]
        first, rest = points[0], points[1:]
        out = []
        for r in range(len(rest) + 1):
            for chosen in itertools.combinations(range(len(rest)), r):
                block = [first] + [rest[c] for c in chosen]
                cuts = list(chosen) + [len(rest)]
                gaps, prev = [], 0
                for c in cuts:
                    gaps.append(rest[prev:c])
                    prev = c + 1
                for fills in itertools.product(*(build(g) for g in gaps)):
                    assign = {x: first for x in block}
                    for f in fills:
                        assign.update(f)
                    out.append(assign)
        return out

    words = set()
    for assign in build(list(range(m))):
        seen: dict[int, int] = {}
        words.add(tuple(seen.setdefault(assign[x], len(seen)) for x in range(m)))
    return words


@_criterion(2, "linear independence of the partition maps")
def criterion_2(**_) -> tuple[bool, str]:
    all4 = enumerate_partitions(0, 4)
    nc6 = [p for p in enumerate_partitions(0, 6) if p.labels in noncrossing_words(6)]
    r4 = rank_of_span(all4, 4)
    r6 = rank_of_span(nc6, 4)
    ok = r4 == 15 == len(all4) and r6 == len(nc6)
    return ok, f"rank P(0,4) at n=4: {r4}/15; rank NC(0,6) at n=4: {r6}/{len(nc6)}"


@_criterion(3, "classification of singly generated categories")
def criterion_3(**_) -> tuple[bool, str]:
    with_x = verify_classification(4, True)
    without = verify_classification(6, False)
    flagged_ok = all(
        e.generator.is_pairing and contains(CategoryId.O_STAR, e.generator)
        for e in with_x.o_star_flagged + without.o_star_flagged
    )
    parts = []
    for name, rep in (("crossing, bound 4", with_x), ("no crossing, bound 6", without)):
        bad = rep.unidentified
        found = ",".join(sorted(c.label for c in rep.categories_found()))
        text = f"{name}: {len(rep.entries) - len(bad)}/{len(rep.entries)} identified [{found}]"
        if bad:
            shapes = sorted({format_partition(one_line(e.generator)) for e in bad})
            sizes = sorted({e.closure_size for e in bad})
            text += f", unidentified e.g. {', '.join(shapes[:3])} (closure sizes {sizes})"
        parts.append(text)
    ok = with_x.all_identified and without.all_identified and flagged_ok
    return ok, "; ".join(parts)


@_criterion(4, "block-size closure conditions")
def criterion_4(**_) -> tuple[bool, str]:
    results = {(k, l): block_conditions(k, l, 8) for k, l in ((3, 2), (4, 2), (3, 1))}
    ok = all(all(r.values()) for r in results.values())
    detail = "; ".join(
        f"b_{k},b_{l} -> " + ",".join(f"{name}={'yes' if v else 'no'}" for name, v in r.items())
        for (k, l), r in results.items()
    )
    return ok, detail


@_criterion(5, "noncrossing versions are the noncrossing parts")
def criterion_5(max_points: int = 8, **_) -> tuple[bool, str]:
    nc_words = {m: noncrossing_words(m) for m in range(max_points + 1)}
    checked = 0
    mismatches = []
    for p in _partitions_up_to(max_points):
        planar = one_line(p).labels in nc_words[p.size]
        for g in CLASSICAL:
            checked += 1
            if contains(nc_of(g), p) != (contains(g, p) and planar):
                mismatches.append(f"{g.label}:{p}")
    detail = f"{checked} memberships compared"
    if mismatches:
        detail += "; mismatches " + ", ".join(mismatches[:5])
    return not mismatches, detail


def _brute_force_permutations(n: int, i, j) -> Fraction:
    total = 0
    perms = list(itertools.permutations(range(n)))
    for perm in perms:
        # u_{ab} = 1 iff perm maps a to b
        total += all(perm[a - 1] == b - 1 for a, b in zip(i, j))
    return Fraction(total, len(perms))


@_criterion(6, "Weingarten integrals against brute force and sampling")
def criterion_6(seed: int = 0, samples: int = 10**6, **_) -> tuple[bool, str]:
    ok = True
    parts = []
    for n in (3, 4, 5):
        for i, target in (((1,), Fraction(1, n)), ((1, 2), Fraction(1, n * (n - 1)))):
            wg = integrate(CategoryId.S, n, i, i)
            brute = _brute_force_permutations(n, i, i)
            ok &= wg == brute == target
            parts.append(f"S_{n} u{''.join(map(str, i))}: {wg}")
    exact = integrate(CategoryId.O, 3, (1,) * 4, (1,) * 4)
    mc = estimate_integral("o", 3, (1,) * 4, (1,) * 4, samples, seed)
    ok &= exact == Fraction(1, 5) and mc.agrees(exact)
    parts.append(f"O_3 u11^4: exact {exact}, MC {mc.mean:.5f} +- {mc.stderr:.5f} ({mc.sigmas(exact):.2f} sigma)")
    return ok, "; ".join(parts)


@_criterion(7, "orthogonality relations of the Haar integrals")
def criterion_7(max_n: int = 6, **_) -> tuple[bool, str]:
    checked = skipped = 0
    failures = []
    for c in ALL_CATEGORIES:
        for n in range(1, max_n + 1):
            if not weingarten(c, 2, n).invertible:
                skipped += 1
                continue
            for i1 in range(1, n + 1):
                for i2 in range(1, n + 1):
                    target = Fraction(int(i1 == i2))
                    rows = sum(integrate(c, n, (i1, i2), (j, j)) for j in range(1, n + 1))
                    cols = sum(integrate(c, n, (j, j), (i1, i2)) for j in range(1, n + 1))
                    checked += 1
                    if rows != target or cols != target:
                        failures.append(f"{c.label} n={n} ({i1},{i2})")
    detail = f"{checked} index pairs over 13 categories, {skipped} singular (c, n) skipped"
    if failures:
        detail += "; failures " + ", ".join(failures[:5])
    return not failures, detail


@_criterion(8, "truncated character moments approach the partition sums")
def criterion_8(ns: tuple[int, ...] = (8, 12, 16, 24), max_k: int = 6, **_) -> tuple[bool, str]:
    ok = True
    worst_c = 0.0
    bad = []
    for c in (CategoryId.O, CategoryId.S, CategoryId.H, CategoryId.B):
        for k in range(1, max_k + 1):
            limit = char_moment_asymptotic(c, k)
            for t in (Fraction(1, 2), Fraction(1)):
                errs = {}
                for n in ns:
                    s = math.floor(t * n)
                    errs[n] = abs(char_moment_exact(c, n, s, k) - limit(t))
                worst_c = max(worst_c, max(float(n * e) for n, e in errs.items()))
                first, last = errs[ns[0]], errs[ns[-1]]
                if not (last < first or first == last == 0):
                    ok = False
                    bad.append(f"{c.label} k={k} t={t}")
    detail = f"fitted C = max n*err = {worst_c:.3f}"
    if bad:
        detail += "; no decay for " + ", ".join(bad)
    return ok, detail


@_criterion(9, "character laws match the law oracles")
def criterion_9(K: int = 8, **_) -> tuple[bool, str]:
    pairs = [
        CategoryId.O,
        CategoryId.S,
        CategoryId.B,
        CategoryId.O_PLUS,
        CategoryId.S_PLUS,
        CategoryId.B_PLUS,
        CategoryId.S_PRIME,
        CategoryId.B_PRIME,
        CategoryId.S_PRIME_PLUS,
        CategoryId.B_PRIME_PLUS,
    ]
    bad = []
    for c in pairs:
        law = CATEGORY_LAW[c]
        if law_moments(law, K).entries != character_moments(c, K, law.kind).entries:
            bad.append(f"{c.label}/{law.symbol}")
    even_t = tuple(T if s % 2 == 0 else TPoly() for s in range(1, K + 1))
    for c, kind in ((CategoryId.H, Kind.CLASSICAL), (CategoryId.H_PLUS, Kind.FREE)):
        if cumulants_from_moments(character_moments(c, K, kind)).entries != even_t:
            bad.append(f"{c.label} cumulants")
    detail = f"{len(pairs)} law identities and 2 cumulant checks up to k={K}"
    if bad:
        detail += "; mismatches " + ", ".join(bad)
    return not bad, detail


@_criterion(10, "Bercovici-Pata correspondence and semigroup verdicts")
def criterion_10(K: int = 8, **_) -> tuple[bool, str]:
    ok = True
    parts = []
    for g in (CategoryId.O, CategoryId.S, CategoryId.H, CategoryId.B):
        mapped = bercovici_pata(character_moments(g, K))
        ok &= mapped.entries == character_moments(nc_of(g), K).entries
        ok &= semigroup_verdict(g, K).semigroup and semigroup_verdict(nc_of(g), K).semigroup
    parts.append("BP maps O,S,H,B to O+,S+,H+,B+; cumulants linear")
    for g in (CategoryId.S_PRIME, CategoryId.B_PRIME):
        v = semigroup_verdict(g, K)
        ok &= not v.semigroup and v.certificate is not None
        if v.certificate:
            s, poly = v.certificate
            parts.append(f"{g.label}: c_{s}(t) = {poly}")
    return ok, "; ".join(parts)


@_criterion(11, "half-liberated category from the three-string crossing")
def criterion_11(bound: int = 8, max_k: int = 5, **_) -> tuple[bool, str]:
    result = closure(ClosureSpec((parse("abc/cba"),), False, bound))
    mismatches = 0
    for m in range(bound + 1):
        for k in range(m + 1):
            for p in iter_partitions(k, m - k, max_block=2):
                if p.is_pairing and (p in result) != contains(CategoryId.O_STAR, p):
                    mismatches += 1
    counts = [len(enumerate_category(CategoryId.O_STAR, 0, 2 * k)) for k in range(1, max_k + 1)]
    factorials = [math.factorial(k) for k in range(1, max_k + 1)]
    ok = mismatches == 0 and counts == factorials
    return ok, f"{mismatches} pairing mismatches up to {bound} points; |O*(0,2k)| = {counts}"


def battery(seed: int, experiments: int):
    """Seeded list of (group, n, kind, args) with a nonsingular exact value."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < experiments:
        g = CLASSICAL[rng.integers(len(CLASSICAL))]
        n = int(rng.integers(3, 6))
        if len(out) % 5 == 4:
            s = int(rng.integers(1, n + 1))
            k = int(rng.integers(1, 5))
            try:
                exact = char_moment_exact(g, n, s, k)
            except SingularGramError:
                continue
            out.append((g, n, "moment", (s, k), exact))
        else:
            k = int(rng.integers(1, 5))
            i = tuple(int(x) for x in rng.integers(1, n + 1, size=k))
            j = tuple(int(x) for x in rng.integers(1, n + 1, size=k))
            try:
                exact = integrate(g, n, i, j)
            except SingularGramError:
                continue
            out.append((g, n, "integral", (i, j), exact))
    return out


@_criterion(12, "Monte Carlo battery against exact values")
def criterion_12(seed: int = 0, experiments: int = 100, samples: int = 20_000, **_) -> tuple[bool, str]:
    inside = 0
    worst = 0.0
    for idx, (g, n, kind, args, exact) in enumerate(battery(seed, experiments)):
        run_seed = [seed, idx]
        if kind == "integral":
            est = estimate_integral(g, n, *args, samples, run_seed)
        else:
            est = estimate_char_moment(g, n, *args, samples, run_seed)
        sig = est.sigmas(exact)
        worst = max(worst, sig)
        inside += sig <= 4
    need = math.ceil(0.99 * experiments)
    return inside >= need, f"{inside}/{experiments} within 4 sigma (need {need}); worst {worst:.2f} sigma"


def run_all(seed: int = 0, only: list[int] | None = None) -> list[CriterionResult]:
    numbers = sorted(CRITERIA) if not only else only
    out = []
    for number in numbers:
        _, fn = CRITERIA[number]
        out.append(fn(seed=seed))
    return out
