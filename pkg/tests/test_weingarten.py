import itertools
import json
import math
import random
from fractions import Fraction

import pytest

from easywg import cache
from easywg.categories import ALL_CATEGORIES, CategoryId, enumerate_category
from easywg.exact import RationalMatrix, leading_minors
from easywg.partition import parse
from easywg.tpoly import TPoly
from easywg.weingarten import (
    SingularGram,
    SingularGramError,
    basis,
    char_moment_asymptotic,
    char_moment_exact,
    gram_matrix,
    integrate,
    weingarten,
)

C = CategoryId
F = Fraction


def finite_group(c: CategoryId, n: int):
    """Signed permutation matrices for the finite easy groups, as maps j -> (i, sign)."""
    signs = {
        C.S: [(1,) * n],
        C.S_PRIME: [(1,) * n, (-1,) * n],
        C.H: list(itertools.product((1, -1), repeat=n)),
    }[c]
    for perm in itertools.permutations(range(1, n + 1)):
        for eps in signs:
            yield perm, eps


def brute_integral(c, n, i, j):
    total, count = F(0), 0
    for perm, eps in finite_group(c, n):
        count += 1
        value = 1
        for a, b in zip(i, j):
            # u_{ab} = eps_b if perm(b) = a
            value *= eps[b - 1] if perm[b - 1] == a else 0
        total += value
    return total / count


class TestGram:
    def test_pairings_k2(self):
        assert [str(p) for p in basis(C.O, 2)] == ["/aa"]
        assert gram_matrix(C.O, 2, 7).rows() == [[7]]

    def test_pairings_k4(self):
        g = gram_matrix(C.O, 4, 5).rows()
        assert g == [[25 if a == b else 5 for b in range(3)] for a in range(3)]

    def test_symmetric_k2(self):
        assert [str(p) for p in basis(C.S, 2)] == ["/aa", "/ab"]
        assert gram_matrix(C.S, 2, 4).rows() == [[4, 4], [4, 16]]

    def test_noncrossing_join_in_full_lattice(self):
        # /abab is not in the basis, but joins of noncrossing partitions are taken
        # among all partitions; /aabb v /abba has one block
        d = basis(C.O_PLUS, 4)
        g = gram_matrix(C.O_PLUS, 4, 3).rows()
        assert len(d) == 2 and g == [[9, 3], [3, 9]]

    @pytest.mark.parametrize("c", ALL_CATEGORIES)
    def test_symmetric_with_positive_minors(self, c):
        for k in range(1, 5):
            d = basis(c, k)
            if not d:
                continue
            g = gram_matrix(c, k, 6)
            assert g.is_symmetric()
            assert all(m > 0 for m in leading_minors(g))

    def test_n_positive(self):
        with pytest.raises(ValueError):
            gram_matrix(C.O, 2, 0)


class TestWeingartenMatrix:
    @pytest.mark.parametrize("c", ALL_CATEGORIES)
    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_inverse_of_gram(self, c, k):
        data = weingarten(c, k, 5)
        if not data.basis:
            assert data.gram.shape == (0, 0)
            return
        wg = data.require_wg()
        assert wg @ data.gram == RationalMatrix.identity(len(data.basis))
        assert wg.is_symmetric()

    def test_pairings_k4_closed_form(self):
        for n in range(2, 8):
            w = weingarten(C.O, 4, n).require_wg()
            assert w[0, 0] == F(n + 1, n * (n - 1) * (n + 2))
            assert w[0, 1] == F(-1, n * (n - 1) * (n + 2))

    def test_singular(self):
        data = weingarten(C.S, 3, 2)
        assert isinstance(data.wg, SingularGram)
        assert not data.invertible
        with pytest.raises(SingularGramError):
            data.require_wg()
        with pytest.raises(SingularGramError):
            integrate(C.S, 2, (1, 1, 1), (1, 1, 1))


class TestIntegrate:
    def test_examples(self):
        assert integrate(C.S, 3, (1, 2), (1, 2)) == F(1, 6)
        assert integrate(C.O, 3, (1, 1, 1, 1), (1, 1, 1, 1)) == F(1, 5)
        for n in range(1, 7):
            assert integrate(C.O, n, (1, 1), (1, 1)) == F(1, n)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_orthogonal_closed_forms(self, n):
        assert integrate(C.O, n, (1, 1, 2, 2), (1, 1, 2, 2)) == F(n + 1, n * (n - 1) * (n + 2))
        assert integrate(C.O, n, (1, 1, 1, 1), (1, 1, 2, 2)) == F(1, n * (n + 2))
        assert integrate(C.O, n, (1, 1, 2, 2), (1, 2, 1, 2)) == F(-1, n * (n - 1) * (n + 2))
        if n >= 3:
            assert integrate(C.O, n, (1,) * 6, (1,) * 6) == F(15, n * (n + 2) * (n + 4))

    @pytest.mark.parametrize("n", [2, 4])
    def test_quantum_permutations_low_degree(self, n):
        assert integrate(C.S_PLUS, n, (1,), (1,)) == F(1, n)
        assert integrate(C.S_PLUS, n, (1, 2), (1, 2)) == F(1, n * (n - 1))

    def test_odd_degree_vanishes_for_pairing_categories(self):
        assert integrate(C.O, 4, (1, 1, 1), (1, 1, 1)) == 0
        assert integrate(C.H, 4, (1,), (1,)) == 0

    @pytest.mark.parametrize("c", [C.S, C.S_PRIME, C.H])
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_against_finite_groups(self, c, n):
        rng = random.Random(f"{c.value}-{n}")
        for k in range(1, 5):
            if not weingarten(c, k, n).invertible:
                continue
            cases = list(itertools.product(range(1, n + 1), repeat=k))
            for i in rng.sample(cases, min(12, len(cases))):
                for j in rng.sample(cases, min(4, len(cases))):
                    assert integrate(c, n, i, j) == brute_integral(c, n, i, j), (k, i, j)

    @pytest.mark.parametrize("c", ALL_CATEGORIES)
    def test_row_orthogonality(self, c):
        n = 5
        for k, extra in ((2, ()), (4, (2, 2))):
            if not weingarten(c, k, n).invertible or not basis(c, k):
                continue
            # sum_j u_1j u_1j = 1 up to the sign class of the category
            total = sum(integrate(c, n, (1, 1, *extra), (j, j, 3, 3)[: k]) for j in range(1, n + 1))
            if k == 2:
                assert total == 1
            else:
                assert total == integrate(c, n, (2, 2), (3, 3))

    @pytest.mark.parametrize("c", [C.O, C.S, C.H_PLUS, C.B_PRIME])
    def test_invariance_under_relabelling(self, c):
        n = 4
        rng = random.Random(c.value)
        for _ in range(15):
            i = tuple(rng.randint(1, n) for _ in range(4))
            j = tuple(rng.randint(1, n) for _ in range(4))
            sigma = list(range(1, n + 1))
            rng.shuffle(sigma)
            tau = list(range(1, n + 1))
            rng.shuffle(tau)
            moved_i = tuple(sigma[v - 1] for v in i)
            moved_j = tuple(tau[v - 1] for v in j)
            assert integrate(c, n, i, j) == integrate(c, n, moved_i, moved_j)

    def test_argument_checks(self):
        with pytest.raises(ValueError):
            integrate(C.O, 3, (1, 2), (1,))
        with pytest.raises(ValueError):
            integrate(C.O, 3, (4, 1), (1, 1))


class TestCharacterMoments:
    def test_examples(self):
        assert char_moment_exact(C.O, 6, 6, 2) == 1
        assert char_moment_exact(C.S, 6, 6, 2) == 2
        assert char_moment_exact(C.O, 10, 5, 2) == F(1, 2)

    @pytest.mark.parametrize("c", ALL_CATEGORIES)
    def test_full_character_counts_fixed_points(self, c):
        # for s = n the trace Tr(G W) is the size of the basis
        for k in range(1, 5):
            if weingarten(c, k, 6).invertible:
                assert char_moment_exact(c, 6, 6, k) == len(basis(c, k))

    def test_asymptotic_examples(self):
        assert char_moment_asymptotic(C.S_PLUS, 4) == TPoly.from_coeffs({1: 1, 2: 6, 3: 6, 4: 1})
        assert char_moment_asymptotic(C.O, 4) == TPoly.from_coeffs({2: 3})
        assert char_moment_asymptotic(C.S, 3) == TPoly.from_coeffs({1: 1, 2: 3, 3: 1})

    @pytest.mark.parametrize("c", ALL_CATEGORIES)
    def test_asymptotic_counts_blocks(self, c):
        for k in range(7):
            poly = char_moment_asymptotic(c, k)
            assert poly(1) == len(enumerate_category(c, 0, k))

    def test_truncated_moment_approaches_limit(self):
        # |exact - limit| shrinks as n grows with s/n fixed
        limit = char_moment_asymptotic(C.O, 4)(F(1, 2))
        errs = [abs(char_moment_exact(C.O, n, n // 2, 4) - limit) for n in (4, 8, 16)]
        assert errs[0] > errs[1] > errs[2]

    def test_argument_checks(self):
        with pytest.raises(ValueError):
            char_moment_exact(C.O, 4, 5, 2)


class TestCache:
    @pytest.fixture
    def fresh(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cache.CACHE_ENV, str(tmp_path))
        weingarten.cache_clear()
        yield tmp_path
        weingarten.cache_clear()

    def test_round_trip(self, fresh):
        first = weingarten(C.H, 4, 4)
        files = list(fresh.glob("wg-v1-h-4-4.json"))
        assert len(files) == 1
        payload = json.loads(files[0].read_text())
        assert payload["version"] == cache.FORMAT_VERSION and not payload["singular"]
        weingarten.cache_clear()
        assert weingarten(C.H, 4, 4).wg == first.wg

    def test_reads_stored_matrix(self, fresh):
        words = [str(p) for p in basis(C.O, 2)]
        fake = RationalMatrix.from_rows([[F(1, 3)]])
        cache.store(C.O.slug, 2, 3, words, fake)
        assert weingarten(C.O, 2, 3).wg == fake

    def test_singular_marker(self, fresh):
        assert isinstance(weingarten(C.S, 3, 2).wg, SingularGram)
        weingarten.cache_clear()
        assert cache.load(C.S.slug, 3, 2, [str(p) for p in basis(C.S, 3)]) is cache.SINGULAR
        assert isinstance(weingarten(C.S, 3, 2).wg, SingularGram)

    def test_corrupt_or_mismatched_files_ignored(self, fresh):
        words = [str(p) for p in basis(C.O, 4)]
        path = fresh / "wg-v1-o-4-3.json"
        path.write_text("{not json")
        assert cache.load(C.O.slug, 4, 3, words) is None
        assert weingarten(C.O, 4, 3).require_wg()[0, 0] == F(4, 30)
        path.write_text(json.dumps({"version": 99, "basis": words, "wg": [["1"]]}))
        assert cache.load(C.O.slug, 4, 3, words) is None
        cache.store(C.O.slug, 4, 3, words, RationalMatrix.identity(3))
        assert cache.load(C.O.slug, 4, 3, words[::-1]) is None

    @pytest.mark.parametrize("value", ["off", ""])
    def test_disabled(self, tmp_path, monkeypatch, value):
        monkeypatch.setenv(cache.CACHE_ENV, value)
        weingarten.cache_clear()
        assert cache.cache_dir() is None
        assert weingarten(C.O, 2, 3).require_wg()[0, 0] == F(1, 3)
        assert not list(tmp_path.iterdir())
        weingarten.cache_clear()

    def test_default_location(self, monkeypatch):
        monkeypatch.delenv(cache.CACHE_ENV)
        assert cache.cache_dir().name == "easywg"


def test_pairing_count_matches_double_factorial():
    for k in range(0, 9, 2):
        assert len(basis(C.O, k)) == math.prod(range(k - 1, 0, -2))
    assert str(parse("/aa")) == "/aa"
