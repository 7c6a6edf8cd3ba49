"""Exact scalar arithmetic, matrix rank and truncated polynomial tests."""

from __future__ import annotations

import itertools
import unittest
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from hilbert_bn.errors import DimensionMismatchError, InvalidFieldError
from hilbert_bn.exactalg import (
    EchelonBasis,
    ExactMatrix,
    Field,
    TruncatedPoly,
    det_poly,
    monomials_below,
    pivot_columns_mod_p,
    rank,
    rref_pivots,
)

F3 = Field.prime(3)
F7 = Field.prime(7)
Q = Field.rational()


@st.composite
def small_matrices(draw, p: int = 7, max_size: int = 4):
    rows = draw(st.integers(1, max_size))
    cols = draw(st.integers(1, max_size))
    values = draw(
        st.lists(
            st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    return values


@st.composite
def square_matrices(draw, p: int = 7, max_size: int = 4):
    size = draw(st.integers(1, max_size))
    return draw(
        st.lists(
            st.lists(st.integers(0, p - 1), min_size=size, max_size=size),
            min_size=size,
            max_size=size,
        )
    )


def _leibniz(rows: list[list[int]], p: int) -> int:
    size = len(rows)
    total = 0
    for perm in itertools.permutations(range(size)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = (-1) ** inversions
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total % p


@st.composite
def sparse_poly_matrices(draw, p: int = 7, max_size: int = 4):
    size = draw(st.integers(1, max_size))
    cap = draw(st.integers(1, 5))
    entry = st.dictionaries(
        st.sampled_from(monomials_below(cap)), st.integers(1, p - 1), max_size=3
    )
    coeffs = draw(
        st.lists(st.lists(entry, min_size=size, max_size=size), min_size=size, max_size=size)
    )
    return cap, coeffs


def _leibniz_poly(coeffs: list[list[dict]], cap: int, p: int) -> dict:
    """Permutation sum with untruncated products, reduced modulo m^cap at the end."""

    size = len(coeffs)
    total: dict = {}
    for perm in itertools.permutations(range(size)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = {(0, 0): (-1) ** inversions}
        for i, j in enumerate(perm):
            product: dict = {}
            for (a1, b1), v1 in term.items():
                for (a2, b2), v2 in coeffs[i][j].items():
                    key = (a1 + a2, b1 + b2)
                    product[key] = product.get(key, 0) + v1 * v2
            term = product
        for key, value in term.items():
            total[key] = total.get(key, 0) + value
    return {e: v % p for e, v in total.items() if sum(e) < cap and v % p}


class FieldTest(unittest.TestCase):
    def test_parse_descriptors(self) -> None:
        self.assertEqual(Field.parse("rational"), Q)
        self.assertEqual(Field.parse("Q"), Q)
        self.assertEqual(Field.parse("prime:7"), F7)
        self.assertEqual(Field.parse("F7"), F7)
        self.assertEqual(Field.parse(" 7 "), F7)

    def test_parse_rejects_composites_and_garbage(self) -> None:
        with self.assertRaises(InvalidFieldError):
            Field.parse("4")
        with self.assertRaises(InvalidFieldError):
            Field.parse("reals")
        with self.assertRaises(InvalidFieldError):
            Field.prime(1)

    def test_prime_field_representatives(self) -> None:
        self.assertEqual(F7.coerce(-1), 6)
        self.assertEqual(F7.coerce(Fraction(1, 2)), 4)
        self.assertEqual(F7.mul(3, F7.inv(3)), 1)
        self.assertEqual(F7.power(3, 6), 1)

    def test_rational_arithmetic_is_exact(self) -> None:
        third = Q.inv(Q.coerce(3))
        self.assertEqual(Q.add(third, Q.add(third, third)), 1)
        self.assertIsInstance(Q.zero(), Fraction)


class RankTest(unittest.TestCase):
    def test_zero_matrix(self) -> None:
        self.assertEqual(rank(ExactMatrix.zeros(Q, 4, 4)), 0)

    def test_identity(self) -> None:
        self.assertEqual(rank(ExactMatrix.identity(Q, 3)), 3)

    def test_all_ones_over_f2(self) -> None:
        self.assertEqual(rank(ExactMatrix.from_rows(Field.prime(2), [[1, 1], [1, 1]])), 1)

    def test_characteristic_changes_rank(self) -> None:
        rows = [[1, 1], [1, 3]]
        self.assertEqual(rank(ExactMatrix.from_rows(Q, rows)), 2)
        self.assertEqual(rank(ExactMatrix.from_rows(Field.prime(2), rows)), 1)

    def test_rref_pivots_are_one_based(self) -> None:
        reduced, pivots = rref_pivots(ExactMatrix.from_rows(Q, [[0, 1, 2], [0, 2, 4], [0, 0, 1]]))
        self.assertEqual(pivots, (2, 3))
        self.assertEqual(reduced.entries[0], (0, 1, 0))

    def test_wrong_entry_count_rejected(self) -> None:
        with self.assertRaises(DimensionMismatchError):
            ExactMatrix(Q, 2, 2, ((1, 0),))


@given(small_matrices())
def test_rank_invariant_under_transpose(rows: list[list[int]]) -> None:
    matrix = ExactMatrix.from_rows(F7, rows)
    assert rank(matrix) == rank(matrix.transpose())


@given(small_matrices(), st.randoms(use_true_random=False))
def test_rank_invariant_under_permutations(rows: list[list[int]], random) -> None:
    matrix = ExactMatrix.from_rows(F7, rows)
    row_order = list(range(matrix.rows))
    col_order = list(range(matrix.cols))
    random.shuffle(row_order)
    random.shuffle(col_order)
    assert rank(matrix.permute_rows(row_order).permute_cols(col_order)) == rank(matrix)


@given(small_matrices(p=3))
def test_census_pivots_match_rref(rows: list[list[int]]) -> None:
    _, pivots = rref_pivots(ExactMatrix.from_rows(F3, rows))
    assert pivot_columns_mod_p(rows, 3, len(rows[0])) == pivots


@given(square_matrices())
def test_det_poly_of_constants_is_leibniz_sum(rows: list[list[int]]) -> None:
    cap = 3
    matrix = [[TruncatedPoly.constant(F7, cap, v) for v in row] for row in rows]
    assert det_poly(matrix).coefficient(0, 0) == _leibniz(rows, 7)
    assert det_poly(matrix).degree() in (None, 0)


@given(sparse_poly_matrices())
def test_det_poly_of_sparse_polynomials_is_leibniz_sum(data: tuple[int, list[list[dict]]]) -> None:
    cap, coeffs = data
    matrix = [[TruncatedPoly(F7, cap, entry) for entry in row] for row in coeffs]
    assert dict(det_poly(matrix).coeffs) == _leibniz_poly(coeffs, cap, 7)


class EchelonBasisTest(unittest.TestCase):
    def test_add_reports_growth(self) -> None:
        basis = EchelonBasis(Field.prime(5))
        self.assertTrue(basis.add({0: 1, 2: 3}))
        self.assertFalse(basis.add({0: 2, 2: 1}))
        self.assertTrue(basis.add({2: 4}))
        self.assertEqual(basis.rank, 2)
        self.assertEqual(basis.pivots(), [0, 2])
        self.assertTrue(basis.contains({0: 1}))
        self.assertFalse(basis.contains({1: 1}))


class TruncatedPolyTest(unittest.TestCase):
    def test_zero_coefficients_are_dropped(self) -> None:
        self.assertTrue(TruncatedPoly(Field.prime(5), 3, {(0, 0): 5}).is_zero())

    def test_terms_beyond_cap_vanish(self) -> None:
        x, y = TruncatedPoly.x(Q, 2), TruncatedPoly.y(Q, 2)
        self.assertTrue((x * y).is_zero())

    def test_binomial_square(self) -> None:
        x, y = TruncatedPoly.x(Q, 3), TruncatedPoly.y(Q, 3)
        square = (x + y) * (x + y)
        self.assertEqual(square.coefficient(1, 1), 2)
        self.assertEqual(square.order(), 2)
        self.assertEqual(str(square), "x^2 + 2*x*y + y^2")

    def test_shift_and_truncate(self) -> None:
        poly = TruncatedPoly.univariate_x(F7, 5, [1, 2, 3])
        shifted = poly.shift(1, 1)
        self.assertEqual(shifted.coefficient(1, 1), 1)
        self.assertEqual(shifted.coefficient(3, 1), 3)
        self.assertEqual(shifted.truncate(4).coefficient(3, 1), 0)
        self.assertEqual(shifted.truncate(4).degree(), 3)
        with self.assertRaises(DimensionMismatchError):
            poly.truncate(6)

    def test_mismatched_caps_rejected(self) -> None:
        with self.assertRaises(DimensionMismatchError):
            TruncatedPoly.x(Q, 3) + TruncatedPoly.x(Q, 4)

    def test_two_by_two_determinant(self) -> None:
        x, y = TruncatedPoly.x(Q, 4), TruncatedPoly.y(Q, 4)
        det = det_poly([[x, y], [y, x]])
        self.assertEqual(det, x * x - y * y)

    def test_monomials_below_is_graded(self) -> None:
        self.assertEqual(monomials_below(3), [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)])


if __name__ == "__main__":
    unittest.main()
