import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from easywg.exact import (
    RationalMatrix,
    SingularMatrixError,
    determinant,
    fraction_inverse,
    inverse,
    leading_minors,
    rank,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def square(n):
    return st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n)


def leibniz(rows):
    """Determinant as a signed sum over permutations."""
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for a, b in itertools.combinations(range(n), 2):
            if perm[a] > perm[b]:
                sign = -sign
        term = Fraction(sign)
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


def cofactor_inverse(rows):
    n = len(rows)
    d = leibniz(rows)
    minor = lambda i, j: [r[:j] + r[j + 1 :] for k, r in enumerate(rows) if k != i]  # noqa: E731
    return [[(-1) ** (i + j) * leibniz(minor(j, i)) / d for j in range(n)] for i in range(n)]


def fraction_rank(rows):
    a = [list(map(Fraction, r)) for r in rows]
    r = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            f = a[i][c] / a[r][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


class TestRationalMatrix:
    def test_normalisation(self):
        m = RationalMatrix(np.array([[2, 4], [6, 8]], dtype=object), -4)
        assert m.denom == 2
        assert m[0, 0] == Fraction(-1, 2)

    def test_strings_round_trip(self):
        m = RationalMatrix.from_rows([[Fraction(1, 6), 2], [0, Fraction(-3, 4)]])
        assert m.to_strings() == [["1/6", "2"], ["0", "-3/4"]]
        assert RationalMatrix.from_strings(m.to_strings()) == m

    def test_arithmetic(self):
        a = RationalMatrix.from_rows([[1, Fraction(1, 2)], [0, 1]])
        b = RationalMatrix.from_rows([[2, 0], [Fraction(1, 3), 1]])
        prod = a @ b
        assert prod.rows() == [[Fraction(13, 6), Fraction(1, 2)], [Fraction(1, 3), 1]]
        assert (a * 2)[0, 1] == 1
        assert a.T[1, 0] == Fraction(1, 2)
        assert a.trace() == 2
        assert a.trace_product(b) == (a @ b).trace()
        assert not a.is_symmetric()
        assert RationalMatrix.identity(3).is_symmetric()

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            RationalMatrix(np.array([[1]], dtype=object), 0)


class TestInverse:
    @given(st.integers(1, 4).flatmap(square))
    def test_against_cofactors(self, rows):
        assume(leibniz(rows) != 0)
        inv = inverse(RationalMatrix.from_rows(rows))
        assert inv.rows() == cofactor_inverse(rows)

    @given(st.integers(1, 6).flatmap(square))
    def test_against_gauss_jordan(self, rows):
        m = RationalMatrix.from_rows(rows)
        try:
            expected = fraction_inverse(rows)
        except SingularMatrixError:
            with pytest.raises(SingularMatrixError):
                inverse(m)
            return
        inv = inverse(m)
        assert inv.rows() == expected
        assert inv @ m == RationalMatrix.identity(len(rows))

    def test_needs_pivoting(self):
        rows = [[0, 1], [1, 0]]
        assert inverse(RationalMatrix.from_rows(rows)).rows() == [[0, 1], [1, 0]]

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            inverse(RationalMatrix.from_rows([[1, 2], [2, 4]]))

    def test_gram_of_two_pairings(self):
        # 3x3 Gram of pairings of four points at n
        n = 3
        g = RationalMatrix.from_rows([[n * n if i == j else n for j in range(3)] for i in range(3)])
        w = inverse(g)
        assert w[0, 0] == Fraction(n + 1, n * (n - 1) * (n + 2))
        assert w[0, 1] == Fraction(-1, n * (n - 1) * (n + 2))


class TestDeterminantAndRank:
    @given(st.integers(0, 5).flatmap(square))
    def test_determinant(self, rows):
        m = RationalMatrix.from_rows(rows) if rows else RationalMatrix(np.zeros((0, 0), dtype=object))
        assert determinant(m) == leibniz(rows)

    @given(st.integers(1, 5), st.integers(1, 5), st.data())
    def test_rank(self, r, c, data):
        # low-rank products are the interesting cases
        inner = data.draw(st.integers(1, 3))
        a = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=inner, max_size=inner), min_size=r, max_size=r))
        b = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=inner, max_size=inner))
        rows = (np.array(a, dtype=object) @ np.array(b, dtype=object)).tolist()
        assert rank(rows) == fraction_rank(rows)

    def test_rank_of_rational_matrix(self):
        m = RationalMatrix.from_rows([[Fraction(1, 2), 1], [1, 2]])
        assert rank(m) == 1
        assert rank([]) == 0

    @given(st.integers(1, 5).flatmap(square))
    def test_leading_minors(self, rows):
        m = RationalMatrix.from_rows(rows)
        expected = [leibniz([r[:j] for r in rows[:j]]) for j in range(1, len(rows) + 1)]
        assert leading_minors(m) == expected

    def test_leading_minors_with_zero_pivot(self):
        m = RationalMatrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 2]])
        assert leading_minors(m) == [0, -1, -2]

    def test_non_square(self):
        with pytest.raises(ValueError):
            determinant(RationalMatrix.from_rows([[1, 2]]))
