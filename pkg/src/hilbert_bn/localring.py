"""Ideal computations in k[[x, y]] through the truncation k[[x, y]] / m^cap.

Spans of ideals are computed by listing every monomial multiple x^a y^b·g of
every generator and row-reducing in the graded monomial basis. Because each
echelon row is pivoted at its lowest-degree column, one reduction at level c
gives the image of the ideal in A/m^j for every j ≤ c.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapTooSmallError, DimensionMismatchError, NonStabilizedError
from .exactalg import (
    EchelonBasis,
    Exponent,
    Field,
    TruncatedPoly,
    monomial_index,
    vector_of,
)
from .hstype import HSType, validate_type

logger = logging.getLogger(__name__)

FIRST_LEVEL = 4


@dataclass(frozen=True, eq=False)
class IdealBasis:
    """Generators of an ideal of k[[x, y]], all stored modulo m^cap."""

    field: Field
    cap: int
    gens: tuple[TruncatedPoly, ...]

    def __post_init__(self) -> None:
        for g in self.gens:
            if g.field != self.field or g.cap != self.cap:
                raise DimensionMismatchError(
                    f"generator over {g.field}/cap {g.cap} in an ideal over "
                    f"{self.field}/cap {self.cap}"
                )
        if all(g.is_zero() for g in self.gens):
            raise DimensionMismatchError("an ideal basis needs a nonzero generator")

    @classmethod
    def of(cls, gens: Sequence[TruncatedPoly]) -> IdealBasis:
        if not gens:
            raise DimensionMismatchError("an ideal basis needs a nonzero generator")
        return cls(gens[0].field, gens[0].cap, tuple(gens))

    def truncate(self, cap: int) -> IdealBasis:
        return IdealBasis(self.field, cap, tuple(g.truncate(cap) for g in self.gens))

    def __len__(self) -> int:
        return len(self.gens)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


@dataclass(frozen=True)
class HilbertSamuelProfile:
    """χ(j) = dim A/(I + m^j) for j = 0..level, and the first j with χ(j) = χ(j+1)."""

    chi: tuple[int, ...]
    stable_at: int

    @property
    def colength(self) -> int:
        return self.chi[self.stable_at]

    def type_values(self) -> list[int]:
        return [self.chi[i + 1] - self.chi[i] for i in range(self.stable_at)]


def power_of_maximal(field: Field, j: int, cap: int) -> IdealBasis:
    """m^j = (x^j, x^{j−1}y, …, y^j)."""

    if j >= cap:
        raise CapTooSmallError(f"m^{j} vanishes modulo m^{cap}")
    return IdealBasis.of(
        [TruncatedPoly.monomial(field, cap, j - b, b) for b in range(j + 1)]
    )


def _multiples(
    gens: Iterable[TruncatedPoly], level: int, *, min_shift: int = 0
) -> Iterable[TruncatedPoly]:
    for g in gens:
        lowest = g.order()
        if lowest is None:
            continue
        for total in range(min_shift, level - lowest):
            for b in range(total + 1):
                yield g.shift(total - b, b)


def _echelon(
    field: Field,
    gens: Iterable[TruncatedPoly],
    level: int,
    *,
    min_shift: int = 0,
) -> tuple[EchelonBasis, dict[Exponent, int]]:
    index = monomial_index(level)
    basis = EchelonBasis(field)
    for multiple in _multiples((g.truncate(level) for g in gens), level, min_shift=min_shift):
        basis.add(vector_of(multiple, index))
    return basis, index


def _check_level(I: IdealBasis, level: int) -> None:
    if level > I.cap:
        raise CapTooSmallError(f"degree {level} exceeds the cap {I.cap}")
    if level < 1:
        raise CapTooSmallError(f"degree must be positive, got {level}")


def span_in_quotient(I: IdealBasis, j: int) -> int:
    """dim (I + m^j)/m^j inside A/m^j."""

    _check_level(I, j)
    basis, _ = _echelon(I.field, I.gens, j)
    return basis.rank


def _spans_up_to(I: IdealBasis, level: int) -> list[int]:
    """[span(0), span(1), …, span(level)] from a single reduction at ``level``."""

    basis, _ = _echelon(I.field, I.gens, level)
    pivots = basis.pivots()
    return [sum(1 for p in pivots if p < j * (j + 1) // 2) for j in range(level + 1)]


@lru_cache(maxsize=256)
def hilbert_samuel(I: IdealBasis) -> HilbertSamuelProfile:
    """Double the truncation level until χ stabilizes, then stop.

    One reduction at level c fixes χ(j) for every j ≤ c; levels double up to
    the cap.
    Cached per ideal object; ``IdealBasis`` hashes by identity.

    Raises:
        NonStabilizedError: if χ(j) < χ(j + 1) for every j + 1 ≤ cap.
    """

    level = min(FIRST_LEVEL, I.cap)
    while level >= 2:
        spans = _spans_up_to(I, level)
        chi = [j * (j + 1) // 2 - spans[j] for j in range(level + 1)]
        for j in range(level):
            if chi[j] == chi[j + 1]:
                logger.debug("Hilbert–Samuel function of %s stable at %d", I, j)
                return HilbertSamuelProfile(tuple(chi[: j + 2]), j)
        if level == I.cap:
            break
        level = min(2 * level, I.cap)
    raise NonStabilizedError(
        f"Hilbert–Samuel function of {I} did not stabilize below cap {I.cap}"
    )


def colength(I: IdealBasis) -> int:
    return hilbert_samuel(I).colength


def hs_type_of_ideal(I: IdealBasis) -> HSType:
    """t_i = χ(i + 1) − χ(i), validated as a type."""

    return validate_type(hilbert_samuel(I).type_values())


def _working_level(I: IdealBasis) -> int:
    # m^{j0} ⊆ I once χ is stable at j0, so m^{j0+1} ⊆ mI.
    return hilbert_samuel(I).stable_at + 1


def min_generators(I: IdealBasis) -> int:
    """μ(I) = dim V/W with V = (I + m^c)/m^c and W = (mI + m^c)/m^c."""

    level = _working_level(I)
    basis, index = _echelon(I.field, I.gens, level, min_shift=1)
    count = 0
    for g in I.gens:
        if basis.add(vector_of(g.truncate(level), index)):
            count += 1
    return count


def ideals_equal(I: IdealBasis, J: IdealBasis) -> bool:
    """Equality of two finite-colength ideals, checked modulo a level both contain."""

    if I.field != J.field:
        raise DimensionMismatchError(f"ideals over {I.field} and {J.field}")
    level = max(_working_level(I), _working_level(J))
    if level > min(I.cap, J.cap):
        raise CapTooSmallError(f"comparison needs level {level}")
    return _contained_at(J.gens, I, level) and _contained_at(I.gens, J, level)


def _contained_at(gens: Sequence[TruncatedPoly], ideal: IdealBasis, level: int) -> bool:
    basis, index = _echelon(ideal.field, ideal.gens, level)
    return all(
        basis.contains(vector_of(g.truncate(level), index)) for g in gens
    )


def generates(
    I: IdealBasis, gens: Sequence[TruncatedPoly], *, level: int | None = None
) -> bool:
    """Whether ``gens`` (elements of I) generate I, using Nakayama at the working level."""

    level = level or _working_level(I)
    if not any(not g.truncate(level).is_zero() for g in gens):
        return False
    return _contained_at(I.gens, IdealBasis.of(list(gens)).truncate(level), level)


def min_generators_by_elimination(I: IdealBasis) -> int:
    """Greedy oracle for μ: drop any generator the others already account for."""

    level = _working_level(I)
    kept = [g for g in I.gens if not g.is_zero()]
    position = 0
    while position < len(kept):
        rest = kept[:position] + kept[position + 1:]
        if rest and generates(I, rest, level=level):
            kept = rest
        else:
            position += 1
    return len(kept)


def contains_power_of_maximal(I: IdealBasis, j: int) -> bool:
    """m^j ⊆ I, decided by m^j ⊆ I + m^{j+1}."""

    _check_level(I, j + 1)
    basis, index = _echelon(I.field, I.gens, j + 1)
    return all(
        basis.contains({index[(j - b, b)]: I.field.one()}) for b in range(j + 1)
    )


def meets_span_trivially(I: IdealBasis, monomials: Sequence[Exponent]) -> bool:
    """⟨monomials⟩ ∩ I = 0, for an ideal of finite colength."""

    level = _working_level(I)
    if any(a + b >= level for a, b in monomials):
        return False
    basis, index = _echelon(I.field, I.gens, level)
    before = basis.rank
    for a, b in monomials:
        basis.add({index[(a, b)]: I.field.one()})
    return basis.rank == before + len(set(monomials))
