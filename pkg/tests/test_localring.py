"""Colength, Hilbert–Samuel function and minimal generators in k[[x, y]]."""

from __future__ import annotations

import pytest

from hilbert_bn import localring
from hilbert_bn.errors import CapTooSmallError, DimensionMismatchError, NonStabilizedError
from hilbert_bn.exactalg import Field, TruncatedPoly

F7 = Field.prime(7)
CAP = 6


def _x(power: int = 1) -> TruncatedPoly:
    return TruncatedPoly.x(F7, CAP, power)


def _y(power: int = 1) -> TruncatedPoly:
    return TruncatedPoly.y(F7, CAP, power)


def _curvilinear() -> localring.IdealBasis:
    return localring.IdealBasis.of([_y(), _x(4)])


def test_square_of_maximal_ideal() -> None:
    ideal = localring.power_of_maximal(F7, 2, CAP)
    profile = localring.hilbert_samuel(ideal)
    assert profile.chi == (0, 1, 3, 3)
    assert profile.stable_at == 2
    assert localring.colength(ideal) == 3
    assert localring.hs_type_of_ideal(ideal).t == (1, 2)
    assert localring.min_generators(ideal) == 3


def test_curvilinear_ideal() -> None:
    ideal = _curvilinear()
    assert localring.colength(ideal) == 4
    assert localring.hs_type_of_ideal(ideal).t == (1, 1, 1, 1)
    assert localring.min_generators(ideal) == 2
    assert localring.span_in_quotient(ideal, 3) == 3


def test_power_of_maximal_containment() -> None:
    ideal = _curvilinear()
    assert not localring.contains_power_of_maximal(ideal, 3)
    assert localring.contains_power_of_maximal(ideal, 4)
    assert localring.contains_power_of_maximal(localring.power_of_maximal(F7, 2, CAP), 2)


def test_redundant_generators_are_not_counted() -> None:
    ideal = localring.IdealBasis.of([_y(), _x(4), _x() * _y(), _y() + _x(4)])
    assert localring.min_generators(ideal) == 2
    assert localring.min_generators_by_elimination(ideal) == 2
    assert localring.generates(ideal, [_y(), _x(4)])
    assert not localring.generates(ideal, [_y()])


def test_ideals_equal_up_to_change_of_generators() -> None:
    first = localring.power_of_maximal(F7, 2, CAP)
    second = localring.IdealBasis.of([_x(2) + _x() * _y(), _x() * _y(), _y(2)])
    assert localring.ideals_equal(first, second)
    assert not localring.ideals_equal(first, _curvilinear())


def test_pattern_monomials_meet_ideal_trivially() -> None:
    ideal = _curvilinear()
    assert localring.meets_span_trivially(ideal, [(0, 0), (1, 0), (2, 0), (3, 0)])
    assert not localring.meets_span_trivially(ideal, [(0, 0), (0, 1)])


def test_unbounded_colength_does_not_stabilize() -> None:
    with pytest.raises(NonStabilizedError):
        localring.hilbert_samuel(localring.IdealBasis.of([_y()]))


def test_invalid_constructions() -> None:
    with pytest.raises(CapTooSmallError):
        localring.power_of_maximal(F7, 3, 3)
    with pytest.raises(DimensionMismatchError):
        localring.IdealBasis.of([TruncatedPoly.zero(F7, CAP)])
    with pytest.raises(DimensionMismatchError):
        localring.IdealBasis.of([_y(), TruncatedPoly.x(F7, CAP + 1, 4)])
    with pytest.raises(CapTooSmallError):
        localring.span_in_quotient(_curvilinear(), CAP + 1)


def test_rational_field_agrees_with_prime_field() -> None:
    Q = Field.rational()
    gens = [
        TruncatedPoly.monomial(Q, CAP, 3, 0),
        TruncatedPoly.monomial(Q, CAP, 1, 1) - TruncatedPoly.monomial(Q, CAP, 2, 0, 2),
        TruncatedPoly.monomial(Q, CAP, 0, 2) - TruncatedPoly.monomial(Q, CAP, 2, 0, 4),
    ]
    ideal = localring.IdealBasis.of(gens)
    assert localring.colength(ideal) == 4
    assert localring.hs_type_of_ideal(ideal).t == (1, 2, 1)
    assert localring.min_generators(ideal) == 3


def test_span_of_node_ideal_modulo_m6() -> None:
    ideal = localring.IdealBasis.of([_x(3), _y(2) - _x(2)])
    assert localring.span_in_quotient(ideal, 6) == 15
    assert localring.colength(ideal) == 6


def test_span_of_maximal_ideal_modulo_m3() -> None:
    ideal = localring.IdealBasis.of([_x(), _y()])
    assert localring.span_in_quotient(ideal, 3) == 5


def test_long_curvilinear_ideal_needs_few_reductions(monkeypatch: pytest.MonkeyPatch) -> None:
    cap = 22
    ideal = localring.IdealBasis.of([TruncatedPoly.y(F7, cap), TruncatedPoly.x(F7, cap, 20)])
    levels: list[int] = []
    spans_up_to = localring._spans_up_to

    def recording(I: localring.IdealBasis, level: int) -> list[int]:
        levels.append(level)
        return spans_up_to(I, level)

    monkeypatch.setattr(localring, "_spans_up_to", recording)
    profile = localring.hilbert_samuel(ideal)

    assert profile.stable_at == 20
    assert profile.colength == 20
    assert levels == [4, 8, 16, 22]
