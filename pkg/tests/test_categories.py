import random

import pytest
from hypothesis import given

from easywg.categories import (
    ALL_CATEGORIES,
    CLASSICAL,
    NONCROSSING,
    BlockSizeSet,
    CategoryId,
    classical_of,
    contains,
    enumerate_category,
    even_part,
    nc_of,
    parse_category,
    predicate,
)
from easywg.partition import (
    compose,
    involution,
    is_noncrossing,
    iter_partitions,
    one_block,
    one_line,
    parse,
    rotate,
    tensor,
    SINGLETON,
)

from strategies import all_set_partitions, crosses, partitions

C = CategoryId


def _members_up_to(c, m):
    return [p for size in range(m + 1) for k in range(size + 1) for p in enumerate_category(c, k, size - k)]


@pytest.fixture(scope="module")
def members8():
    return {c: _members_up_to(c, 8) for c in ALL_CATEGORIES}


class TestNames:
    @pytest.mark.parametrize("c", ALL_CATEGORIES)
    def test_round_trip(self, c):
        assert parse_category(c.value) is c
        assert parse_category(c.label) is c
        assert parse_category(c.slug) is c

    def test_aliases(self):
        assert parse_category("O_STAR") is C.O_STAR
        assert parse_category("s_prime_plus") is C.S_PRIME_PLUS

    def test_unknown(self):
        with pytest.raises(ValueError, match="unknown category"):
            parse_category("d")

    def test_nc_pairs(self):
        for g in CLASSICAL:
            assert classical_of(nc_of(g)) is g
            assert nc_of(g).block_sizes is g.block_sizes
        with pytest.raises(ValueError):
            nc_of(C.O_PLUS)
        with pytest.raises(ValueError):
            classical_of(C.O)


class TestContains:
    def test_examples(self):
        assert contains(C.H, parse("/aaaa"))
        assert not contains(C.H, parse("/a"))
        assert contains(C.S_PRIME, parse("/ab"))
        assert not contains(C.S_PRIME, parse("/a"))
        assert contains(C.O_STAR, parse("/abcabc"))
        assert not contains(C.O_STAR, parse("/abab"))

    def test_crossing_membership(self):
        cross = parse("ab/ba")
        assert all(contains(c, cross) for c in CLASSICAL)
        assert not any(contains(c, cross) for c in NONCROSSING)
        assert not contains(C.O_STAR, cross)

    def test_b_prime_counts_singletons(self):
        assert contains(C.B_PRIME, parse("/ab"))
        assert not contains(C.B_PRIME, parse("/aab"))
        assert contains(C.B_PRIME, parse("/abcc"))

    @pytest.mark.parametrize("c", ALL_CATEGORIES)
    def test_unit_and_duality(self, c):
        assert contains(c, parse("a/a"))
        assert contains(c, parse("/aa"))
        assert contains(c, parse("/"))

    @pytest.mark.parametrize("c", ALL_CATEGORIES)
    @given(p=partitions(8))
    def test_rotation_invariant(self, c, p):
        inside = contains(c, p)
        if p.upper:
            assert contains(c, rotate(p, "left")) == inside
        if p.lower:
            assert contains(c, rotate(p, "right")) == inside
        assert contains(c, one_line(p)) == inside


class TestEnumerateCategory:
    def test_examples(self):
        assert len(enumerate_category(C.O, 0, 4)) == 3
        assert len(enumerate_category(C.S_PLUS, 0, 4)) == 14
        # 3 pairings, 6 with one pair and two singletons, 1 with four singletons
        assert len(enumerate_category(C.B_PRIME, 0, 4)) == 10

    @pytest.mark.parametrize("c", ALL_CATEGORIES)
    @pytest.mark.parametrize("m", range(7))
    def test_against_brute_force(self, c, m):
        allowed = c.block_sizes

        def member(blocks):
            if c is C.O_STAR:
                pairs = all(len(b) == 2 for b in blocks)
                if not pairs:
                    return False
                for a in blocks:
                    n_cross = sum(
                        1 for b in blocks if b is not a and (a[0] < b[0] < a[1]) != (a[0] < b[1] < a[1])
                    )
                    if n_cross % 2:
                        return False
                return True
            if not all(allowed.allows(len(b)) for b in blocks):
                return False
            if c.even_only and m % 2:
                return False
            return not (c.is_noncrossing and crosses(blocks))

        expected = sum(1 for blocks in all_set_partitions(m) if member(blocks))
        assert len(enumerate_category(c, 0, m)) == expected

    def test_canonical_order(self):
        from easywg.partition import format_partition

        words = [format_partition(p) for p in enumerate_category(C.H, 2, 2)]
        assert words == sorted(words)


class TestEvenPart:
    def test_examples(self):
        everything = lambda p: True  # noqa: E731
        assert not even_part(everything)(parse("/a"))
        assert even_part(everything)(parse("/ab"))

    @given(partitions(8))
    def test_idempotent(self, p):
        base = predicate(C.S)
        assert even_part(even_part(base))(p) == even_part(base)(p)

    @pytest.mark.parametrize("g", [C.S, C.B, C.S_PLUS, C.B_PLUS])
    @given(p=partitions(8))
    def test_primed_are_even_parts(self, g, p):
        primed = CategoryId(g.base + "'" + ("+" if g.is_noncrossing else ""))
        assert contains(primed, p) == even_part(predicate(g))(p)


class TestBlockSizeSet:
    def test_cases(self):
        assert [s for s in range(1, 7) if BlockSizeSet.PAIRS.allows(s)] == [2]
        assert [s for s in range(1, 7) if BlockSizeSet.EVEN.allows(s)] == [2, 4, 6]
        assert [s for s in range(1, 7) if BlockSizeSet.SINGLETONS_AND_PAIRS.allows(s)] == [1, 2]
        assert all(BlockSizeSet.ALL.allows(s) for s in range(1, 7))


class TestCategoryAxioms:
    """Random admissible operations on members (at most 8 points) stay inside."""

    @pytest.mark.parametrize("c", ALL_CATEGORIES)
    def test_closed_under_operations(self, c, members8):
        rng = random.Random(f"axioms-{c.value}")
        members = members8[c]
        by_lower = {}
        for p in members:
            by_lower.setdefault(p.lower, []).append(p)
        for _ in range(1000):
            p = rng.choice(members)
            q = rng.choice(members)
            assert contains(c, involution(p))
            if p.upper:
                assert contains(c, rotate(p, "left"))
            assert contains(c, tensor(p, q))
            partners = by_lower.get(p.upper, [])
            if partners:
                r = rng.choice(partners)
                pr, _ = compose(p, r)
                assert contains(c, pr)

    def test_restrictions_pairwise_distinct(self):
        for family in (CLASSICAL, NONCROSSING):
            seen = {}
            for c in family:
                key = frozenset(p for p in _members_up_to(c, 6))
                assert key not in seen, (c, seen.get(key))
                seen[key] = c


class TestBlockSizes:
    @pytest.mark.parametrize("c", CLASSICAL + NONCROSSING)
    def test_blocks_of_members(self, c, members8):
        for p in members8[c]:
            for block in p.blocks:
                b = one_block(len(block))
                assert contains(c, b) or contains(c, tensor(SINGLETON, b))

    @pytest.mark.parametrize("c", CLASSICAL + NONCROSSING)
    def test_assembly_from_member_blocks(self, c):
        for m in range(8):
            for p in iter_partitions(0, m):
                if c.is_noncrossing and not is_noncrossing(p):
                    continue
                if all(contains(c, one_block(len(b))) for b in p.blocks):
                    assert contains(c, p)

    def test_o_star_is_not_assembled_from_blocks(self):
        # every block of /abab is a pair, yet the pairing is not half-liberated
        p = parse("/abab")
        assert all(contains(C.O_STAR, one_block(len(b))) for b in p.blocks)
        assert not contains(C.O_STAR, p)
