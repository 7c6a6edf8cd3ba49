"""Exact scalars, dense exact matrices and truncated bivariate polynomials.

Everything here is immutable after construction. Scalars are plain Python
objects: ``int`` representatives in ``[0, p)`` for a prime field and
``fractions.Fraction`` for the rationals, so no rounding ever happens.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import lru_cache
from typing import Union

import numpy as np
from sympy import isprime

from .errors import DimensionMismatchError, InvalidFieldError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
Exponent = tuple[int, int]

# Integer range used for "uniform" sampling over Q.
RATIONAL_SAMPLE_RANGE = (-9, 9)


@dataclass(frozen=True)
class Field:
    """Ground field descriptor: ``characteristic == 0`` means Q, otherwise F_p."""

    characteristic: int

    def __post_init__(self) -> None:
        p = self.characteristic
        if p != 0 and (p < 2 or not isprime(p)):
            raise InvalidFieldError(f"{p} is not prime")

    @classmethod
    def rational(cls) -> Field:
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> Field:
        if p == 0:
            raise InvalidFieldError("use Field.rational() for characteristic zero")
        return cls(int(p))

    @classmethod
    def parse(cls, text: str) -> Field:
        """Parse ``rational``/``Q``, ``prime:<p>``, ``F<p>`` or a bare prime."""

        cleaned = text.strip().lower().replace("_", "")
        if cleaned in {"rational", "q", "qq"}:
            return cls.rational()
        for prefix in ("prime:", "f", "gf"):
            if cleaned.startswith(prefix):
                cleaned = cleaned[len(prefix):]
                break
        try:
            return cls.prime(int(cleaned))
        except ValueError as exc:
            if isinstance(exc, InvalidFieldError):
                raise
            raise InvalidFieldError(f"cannot parse field descriptor {text!r}") from exc

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __str__(self) -> str:
        return "Q" if self.is_rational else f"F_{self.characteristic}"

    # scalar arithmetic

    def coerce(self, value: int | Fraction) -> Scalar:
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"{value} has no image in {self}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def zero(self) -> Scalar:
        return Fraction(0) if self.is_rational else 0

    def one(self) -> Scalar:
        return Fraction(1) if self.is_rational else 1

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b if self.is_rational else (a + b) % self.characteristic

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b if self.is_rational else (a - b) % self.characteristic

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.is_rational else (-a) % self.characteristic

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b if self.is_rational else (a * b) % self.characteristic

    def inv(self, a: Scalar) -> Scalar:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a) if self.is_rational else pow(a, -1, self.characteristic)

    def power(self, a: Scalar, exponent: int) -> Scalar:
        if self.is_rational:
            return Fraction(a) ** exponent
        return pow(a, exponent, self.characteristic)

    def random_element(self, rng: np.random.Generator) -> Scalar:
        if self.is_rational:
            low, high = RATIONAL_SAMPLE_RANGE
            return Fraction(int(rng.integers(low, high + 1)))
        return int(rng.integers(0, self.characteristic))


# Dense matrices


@dataclass(frozen=True)
class ExactMatrix:
    field: Field
    rows: int
    cols: int
    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise DimensionMismatchError(
                f"expected {self.rows}x{self.cols} entries for an ExactMatrix"
            )

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[int | Fraction]]) -> ExactMatrix:
        entries = tuple(tuple(field.coerce(value) for value in row) for row in rows)
        cols = len(entries[0]) if entries else 0
        return cls(field, len(entries), cols, entries)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> ExactMatrix:
        return cls(field, rows, cols, tuple((field.zero(),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, size: int) -> ExactMatrix:
        return cls.from_rows(
            field, [[int(i == j) for j in range(size)] for i in range(size)]
        )

    def __getitem__(self, position: tuple[int, int]) -> Scalar:
        row, col = position
        return self.entries[row][col]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(
            self.field,
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def permute_rows(self, order: Sequence[int]) -> ExactMatrix:
        return ExactMatrix(self.field, self.rows, self.cols, tuple(self.entries[i] for i in order))

    def permute_cols(self, order: Sequence[int]) -> ExactMatrix:
        return ExactMatrix(
            self.field,
            self.rows,
            self.cols,
            tuple(tuple(row[j] for j in order) for row in self.entries),
        )


def _row_reduce(field: Field, rows: list[list[Scalar]], ncols: int) -> list[int]:
    """Bring ``rows`` to reduced row-echelon form in place; return 0-based pivots."""

    pivots: list[int] = []
    lead = 0
    for col in range(ncols):
        if lead == len(rows):
            break
        pivot = next((i for i in range(lead, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[lead], rows[pivot] = rows[pivot], rows[lead]
        scale = field.inv(rows[lead][col])
        rows[lead] = [field.mul(value, scale) for value in rows[lead]]
        for i in range(len(rows)):
            factor = rows[i][col]
            if i != lead and factor:
                rows[i] = [
                    field.sub(value, field.mul(factor, base))
                    for value, base in zip(rows[i], rows[lead])
                ]
        pivots.append(col)
        lead += 1
    return pivots


def rank(matrix: ExactMatrix) -> int:
    return len(rref_pivots(matrix)[1])


def rref_pivots(matrix: ExactMatrix) -> tuple[ExactMatrix, tuple[int, ...]]:
    """Reduced row-echelon form and the 1-based pivot columns a_1 < ... < a_R.

    a_i is the least number of leading columns whose rank is i.
    """

    rows = [list(row) for row in matrix.entries]
    pivots = _row_reduce(matrix.field, rows, matrix.cols)
    reduced = ExactMatrix(matrix.field, matrix.rows, matrix.cols, tuple(tuple(r) for r in rows))
    return reduced, tuple(col + 1 for col in pivots)


def pivot_columns_mod_p(rows: Sequence[Sequence[int]], p: int, ncols: int) -> tuple[int, ...]:
    """1-based pivot columns of an integer matrix over F_p (forward elimination only).

    The census calls this once per enumerated matrix, so it works on plain int
    lists and skips back substitution.
    """

    work = [list(row) for row in rows]
    pivots: list[int] = []
    lead = 0
    for col in range(ncols):
        pivot = next((i for i in range(lead, len(work)) if work[i][col] % p), None)
        if pivot is None:
            continue
        work[lead], work[pivot] = work[pivot], work[lead]
        scale = pow(work[lead][col], -1, p)
        base = work[lead]
        for i in range(lead + 1, len(work)):
            factor = work[i][col] % p
            if factor:
                factor = factor * scale % p
                work[i] = [(value - factor * b) % p for value, b in zip(work[i], base)]
        pivots.append(col + 1)
        lead += 1
        if lead == len(work):
            break
    return tuple(pivots)


class EchelonBasis:
    """Incremental sparse echelon basis.

    Vectors are ``{column: scalar}`` dicts. Every stored row is normalised so
    that its lowest nonzero column (its pivot) carries a 1, and pivots are
    pairwise distinct.
    """

    def __init__(self, field: Field) -> None:
        self._field = field
        self._rows: dict[int, dict[int, Scalar]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def reduce(self, vector: Mapping[int, Scalar]) -> dict[int, Scalar]:
        field = self._field
        current = {col: value for col, value in vector.items() if value}
        while current:
            col = min(current)
            basis_row = self._rows.get(col)
            if basis_row is None:
                return current
            factor = current[col]
            for other, value in basis_row.items():
                updated = field.sub(current.get(other, field.zero()), field.mul(factor, value))
                if updated:
                    current[other] = updated
                else:
                    current.pop(other, None)
        return current

    def add(self, vector: Mapping[int, Scalar]) -> bool:
        """Insert ``vector``; return ``True`` when it enlarged the span."""

        residue = self.reduce(vector)
        if not residue:
            return False
        col = min(residue)
        scale = self._field.inv(residue[col])
        self._rows[col] = {c: self._field.mul(v, scale) for c, v in residue.items()}
        return True

    def contains(self, vector: Mapping[int, Scalar]) -> bool:
        return not self.reduce(vector)


# Truncated polynomials in k[[x, y]] / m^cap


@dataclass(frozen=True)
class TruncatedPoly:
    """A polynomial in x, y with every term of total degree >= ``cap`` dropped."""

    field: Field
    cap: int
    coeffs: Mapping[Exponent, Scalar] = dataclass_field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.cap < 1:
            raise DimensionMismatchError("cap must be at least 1")
        cleaned: dict[Exponent, Scalar] = {}
        for (a, b), value in self.coeffs.items():
            if a < 0 or b < 0:
                raise DimensionMismatchError(f"negative exponent {(a, b)}")
            if a + b >= self.cap:
                continue
            scalar = self.field.coerce(value)
            if scalar:
                cleaned[(a, b)] = scalar
        object.__setattr__(self, "coeffs", cleaned)

    @classmethod
    def zero(cls, field: Field, cap: int) -> TruncatedPoly:
        return cls(field, cap, {})

    @classmethod
    def constant(cls, field: Field, cap: int, value: int | Fraction) -> TruncatedPoly:
        return cls(field, cap, {(0, 0): value})

    @classmethod
    def monomial(
        cls, field: Field, cap: int, a: int, b: int, value: int | Fraction = 1
    ) -> TruncatedPoly:
        return cls(field, cap, {(a, b): value})

    @classmethod
    def x(cls, field: Field, cap: int, power: int = 1) -> TruncatedPoly:
        return cls.monomial(field, cap, power, 0)

    @classmethod
    def y(cls, field: Field, cap: int, power: int = 1) -> TruncatedPoly:
        return cls.monomial(field, cap, 0, power)

    @classmethod
    def univariate_x(
        cls, field: Field, cap: int, coefficients: Sequence[int | Fraction]
    ) -> TruncatedPoly:
        """The polynomial sum_k coefficients[k] * x^k."""

        return cls(field, cap, {(k, 0): c for k, c in enumerate(coefficients)})

    def _check(self, other: TruncatedPoly) -> None:
        if self.field != other.field or self.cap != other.cap:
            raise DimensionMismatchError(
                f"cannot combine polynomials over {self.field}/cap {self.cap} "
                f"and {other.field}/cap {other.cap}"
            )

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, a: int, b: int) -> Scalar:
        return self.coeffs.get((a, b), self.field.zero())

    def terms(self) -> list[tuple[Exponent, Scalar]]:
        """Terms in graded order: by total degree, then by descending x-power."""

        return sorted(self.coeffs.items(), key=lambda item: (sum(item[0]), -item[0][0]))

    def order(self) -> int | None:
        """Lowest total degree of a term, ``None`` for the zero polynomial."""

        return min((a + b for a, b in self.coeffs), default=None)

    def degree(self) -> int | None:
        return max((a + b for a, b in self.coeffs), default=None)

    def truncate(self, cap: int) -> TruncatedPoly:
        if cap > self.cap:
            raise DimensionMismatchError(f"cannot raise cap {self.cap} to {cap}")
        return TruncatedPoly(self.field, cap, self.coeffs)

    def shift(self, a: int, b: int) -> TruncatedPoly:
        """Multiply by the monomial x^a y^b."""

        return TruncatedPoly(
            self.field, self.cap, {(i + a, j + b): v for (i, j), v in self.coeffs.items()}
        )

    def scale(self, factor: int | Fraction) -> TruncatedPoly:
        scalar = self.field.coerce(factor)
        return TruncatedPoly(
            self.field, self.cap, {e: self.field.mul(v, scalar) for e, v in self.coeffs.items()}
        )

    def __add__(self, other: TruncatedPoly) -> TruncatedPoly:
        self._check(other)
        field = self.field
        merged = dict(self.coeffs)
        for exponent, value in other.coeffs.items():
            merged[exponent] = field.add(merged.get(exponent, field.zero()), value)
        return TruncatedPoly(field, self.cap, merged)

    def __neg__(self) -> TruncatedPoly:
        return TruncatedPoly(
            self.field, self.cap, {e: self.field.neg(v) for e, v in self.coeffs.items()}
        )

    def __sub__(self, other: TruncatedPoly) -> TruncatedPoly:
        return self + (-other)

    def __mul__(self, other: TruncatedPoly | int | Fraction) -> TruncatedPoly:
        if not isinstance(other, TruncatedPoly):
            return self.scale(other)
        self._check(other)
        field, cap = self.field, self.cap
        product: dict[Exponent, Scalar] = {}
        for (a1, b1), v1 in self.coeffs.items():
            for (a2, b2), v2 in other.coeffs.items():
                a, b = a1 + a2, b1 + b2
                if a + b >= cap:
                    continue
                product[(a, b)] = field.add(product.get((a, b), field.zero()), field.mul(v1, v2))
        return TruncatedPoly(field, cap, product)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for (a, b), value in self.terms():
            factors = [f"x^{a}" if a > 1 else "x"] if a else []
            factors += [f"y^{b}" if b > 1 else "y"] if b else []
            monomial = "*".join(factors)
            if not monomial:
                pieces.append(str(value))
            elif value == 1:
                pieces.append(monomial)
            else:
                pieces.append(f"{value}*{monomial}")
        return " + ".join(pieces)


PolyMatrix = Sequence[Sequence[TruncatedPoly]]


def det_poly(matrix: PolyMatrix) -> TruncatedPoly:
    """Determinant of a square matrix of truncated polynomials.

    Laplace expansion along rows, memoised on the set of remaining columns,
    truncating at the shared cap after every product.
    """

    size = len(matrix)
    if size == 0 or any(len(row) != size for row in matrix):
        raise DimensionMismatchError("det_poly needs a nonempty square matrix")
    field, cap = matrix[0][0].field, matrix[0][0].cap
    for row in matrix:
        for entry in row:
            if entry.field != field or entry.cap != cap:
                raise DimensionMismatchError("all entries must share field and cap")

    one = TruncatedPoly.constant(field, cap, 1)

    @lru_cache(maxsize=None)
    def expand(row: int, columns: tuple[int, ...]) -> TruncatedPoly:
        if row == size:
            return one
        total = TruncatedPoly.zero(field, cap)
        for position, col in enumerate(columns):
            entry = matrix[row][col]
            if entry.is_zero():
                continue
            rest = columns[:position] + columns[position + 1:]
            cofactor = entry * expand(row + 1, rest)
            total = total + cofactor if position % 2 == 0 else total - cofactor
        return total

    return expand(0, tuple(range(size)))


def monomials_below(cap: int) -> list[Exponent]:
    """All (a, b) with a + b < cap in graded order, x before y within a degree."""

    return [(degree - b, b) for degree in range(cap) for b in range(degree + 1)]


def monomial_index(cap: int) -> dict[Exponent, int]:
    return {exponent: i for i, exponent in enumerate(monomials_below(cap))}


def vector_of(poly: TruncatedPoly, index: Mapping[Exponent, int]) -> dict[int, Scalar]:
    """Coordinates of ``poly`` in the monomial basis ``index`` (terms outside are dropped)."""

    return {index[e]: v for e, v in poly.coeffs.items() if e in index}

