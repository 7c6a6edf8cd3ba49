"""Affine chart of a Hilbert–Samuel stratum around its monomial ideal.

A normal pattern with rows k_0 > ⋯ > k_{d−1} gives the monomials
u_s = x^{k_s} y^s and the (d+1)×d resolution matrix M_P. Every ideal of the
chart is cut out by the d×d minors of M_P + β, where β runs over upper
triangular matrices of univariate polynomials in x with bounded degrees and
some forced-zero constant terms. Rows and columns are 1-based here.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidBetaError, VerificationFailure
from .exactalg import ExactMatrix, Field, Scalar, TruncatedPoly, det_poly, rank
from .hstype import (
    HSType,
    NormalPattern,
    dim_stratum,
    jumping_indices,
    partition_from_type,
    type_from_partition,
)
from .localring import IdealBasis, hs_type_of_ideal, meets_span_trivially

logger = logging.getLogger(__name__)

Slot = tuple[int, int, int]


def default_cap(pattern: NormalPattern) -> int:
    return pattern.n + 2


def monomial_ideal(
    pattern: NormalPattern, field: Field, cap: int | None = None
) -> IdealBasis:
    """(u_0, …, u_d) with u_s = x^{k_s} y^s and k_d = 0."""

    cap = cap or default_cap(pattern)
    return IdealBasis.of(
        [
            TruncatedPoly.monomial(field, cap, pattern.row(s), s)
            for s in range(pattern.d + 1)
        ]
    )


@dataclass(frozen=True, eq=False)
class ResolutionMatrix:
    pattern: NormalPattern
    entries: tuple[tuple[TruncatedPoly, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, position: tuple[int, int]) -> TruncatedPoly:
        i, j = position
        return self.entries[i - 1][j - 1]


def matrix_MP(
    pattern: NormalPattern, field: Field, cap: int | None = None
) -> ResolutionMatrix:
    """(M_P)_{ii} = −y and (M_P)_{(j+1)j} = x^{k_{j−1} − k_j}; zero elsewhere."""

    cap = cap or default_cap(pattern)
    d = pattern.d
    zero = TruncatedPoly.zero(field, cap)
    rows: list[list[TruncatedPoly]] = [[zero] * d for _ in range(d + 1)]
    for i in range(1, d + 1):
        rows[i - 1][i - 1] = -TruncatedPoly.y(field, cap)
    for j in range(1, d + 1):
        rows[j][j - 1] = TruncatedPoly.x(field, cap, pattern.row(j - 1) - pattern.row(j))
    return ResolutionMatrix(pattern, tuple(tuple(row) for row in rows))


def _same_block(pattern: NormalPattern, i: int, j: int) -> bool:
    return pattern.row(j - 1) + j == pattern.row(i - 1) + i


def degree_bound(pattern: NormalPattern, j: int) -> int:
    """deg β_{ij} ≤ k_{j−1} − k_j − 1 for every row i ≤ j."""

    return pattern.row(j - 1) - pattern.row(j) - 1


def beta_slots(pattern: NormalPattern) -> list[Slot]:
    """Free coefficient positions (i, j, power) of β, column by column."""

    slots: list[Slot] = []
    for j in range(1, pattern.d + 1):
        for i in range(1, j + 1):
            for power in range(degree_bound(pattern, j) + 1):
                if power == 0 and _same_block(pattern, i, j):
                    continue
                slots.append((i, j, power))
    return slots


def constant_slots(pattern: NormalPattern) -> set[tuple[int, int]]:
    """Positions (i, j) of β̄(0) that are not forced to vanish."""

    return {(i, j) for i, j, power in beta_slots(pattern) if power == 0}


@dataclass(frozen=True)
class BetaMatrix:
    """(d+1)×d deformation matrix; ``coeffs[(i, j)]`` lists β_{ij} by ascending power of x."""

    pattern: NormalPattern
    field: Field
    coeffs: Mapping[tuple[int, int], tuple[Scalar, ...]]

    def __post_init__(self) -> None:
        pattern, field = self.pattern, self.field
        cleaned: dict[tuple[int, int], tuple[Scalar, ...]] = {}
        for (i, j), values in self.coeffs.items():
            poly = [field.coerce(v) for v in values]
            while poly and not poly[-1]:
                poly.pop()
            if not poly:
                continue
            if not (1 <= i <= pattern.d + 1 and 1 <= j <= pattern.d):
                raise InvalidBetaError(f"position ({i}, {j}) is outside the matrix")
            if i > j:
                raise InvalidBetaError(f"β_{i}{j} must vanish below the diagonal")
            if len(poly) - 1 > degree_bound(pattern, j):
                raise InvalidBetaError(
                    f"deg β_{i}{j} = {len(poly) - 1} exceeds {degree_bound(pattern, j)}"
                )
            if poly[0] and _same_block(pattern, i, j):
                raise InvalidBetaError(f"β_{i}{j}(0) must vanish")
            cleaned[(i, j)] = tuple(poly)
        object.__setattr__(self, "coeffs", cleaned)

    @classmethod
    def zero(cls, pattern: NormalPattern, field: Field) -> BetaMatrix:
        return cls(pattern, field, {})

    @classmethod
    def from_slots(
        cls,
        pattern: NormalPattern,
        field: Field,
        values: Mapping[Slot, int | Fraction],
    ) -> BetaMatrix:
        allowed = set(beta_slots(pattern))
        coeffs: dict[tuple[int, int], list[Scalar]] = {}
        for slot, value in values.items():
            if slot not in allowed:
                raise InvalidBetaError(f"{slot} is not a free coefficient of β")
            i, j, power = slot
            poly = coeffs.setdefault((i, j), [0] * (degree_bound(pattern, j) + 1))
            poly[power] = value
        return cls(pattern, field, {key: tuple(poly) for key, poly in coeffs.items()})

    def entry(self, i: int, j: int) -> tuple[Scalar, ...]:
        return self.coeffs.get((i, j), ())

    def constant_part(self) -> ExactMatrix:
        """β̄(0): the constant terms with the (zero) last row removed."""

        d = self.pattern.d
        return ExactMatrix.from_rows(
            self.field,
            [[(self.entry(i, j) or (0,))[0] for j in range(1, d + 1)] for i in range(1, d + 1)],
        )

    def as_poly(self, i: int, j: int, cap: int) -> TruncatedPoly:
        return TruncatedPoly.univariate_x(self.field, cap, self.entry(i, j))


def beta_dims(T: HSType) -> tuple[int, int]:
    """(n_T, n_e): dimension of the chart and of the shape-e matrix space."""

    pattern = partition_from_type(T)
    n_T = len(beta_slots(pattern))
    if n_T != dim_stratum(T):
        raise VerificationFailure(
            "chart dimension equals stratum dimension",
            {"type": T.t, "slots": n_T, "dim_stratum": dim_stratum(T)},
        )
    shape = jumping_indices(T).shape
    n_e = (T.d**2 - sum(e * e for e in shape)) // 2
    return n_T, n_e


def rng_for(seed: int | np.random.SeedSequence) -> np.random.Generator:
    """Counter-based generator; streams for batches come from ``SeedSequence.spawn``."""

    return np.random.Generator(np.random.Philox(seed))


def _random_beta(
    pattern: NormalPattern, field: Field, rng: np.random.Generator
) -> BetaMatrix:
    values = {slot: field.random_element(rng) for slot in beta_slots(pattern)}
    return BetaMatrix.from_slots(pattern, field, values)


def sample_beta(T: HSType, seed: int, field: Field) -> BetaMatrix:
    """A uniformly random admissible β, deterministic in ``seed``."""

    pattern = partition_from_type(T)
    if not field.is_rational and field.characteristic < T.n:
        logger.debug("Sampling β for n=%d over %s, below the colength", T.n, field)
    return _random_beta(pattern, field, rng_for(seed))


def sample_betas(
    pattern: NormalPattern, field: Field, seed: int | Sequence[int], count: int
) -> list[BetaMatrix]:
    """``count`` independent samples, one spawned stream each."""

    streams = np.random.SeedSequence(seed).spawn(count)
    return [_random_beta(pattern, field, rng_for(stream)) for stream in streams]


def perturbed_matrix(
    pattern: NormalPattern, beta: BetaMatrix, cap: int
) -> list[list[TruncatedPoly]]:
    if beta.pattern != pattern:
        raise InvalidBetaError(f"β belongs to pattern {beta.pattern}, not {pattern}")
    base = matrix_MP(pattern, beta.field, cap)
    return [
        [base[i, j] + beta.as_poly(i, j, cap) for j in range(1, pattern.d + 1)]
        for i in range(1, pattern.d + 2)
    ]


def ideal_from_beta(
    pattern: NormalPattern, beta: BetaMatrix, cap: int | None = None
) -> IdealBasis:
    """The ideal of d×d minors of M_P + β; minor s drops row s + 1 and carries (−1)^s."""

    cap = cap or default_cap(pattern)
    matrix = perturbed_matrix(pattern, beta, cap)
    minors = []
    for s in range(pattern.d + 1):
        minor = det_poly(matrix[:s] + matrix[s + 1:])
        minors.append(minor if s % 2 == 0 else -minor)
    return IdealBasis.of(minors)


def mu_predicted(beta: BetaMatrix) -> int:
    return beta.pattern.d + 1 - rank(beta.constant_part())


def chart_condition(pattern: NormalPattern, I: IdealBasis) -> bool:
    """⟨P⟩ ∩ I = 0 and the type of I is the type of P."""

    if hs_type_of_ideal(I) != type_from_partition(pattern):
        return False
    return meets_span_trivially(I, pattern.monomials())


def veronese_chart_beta(field: Field, a1: int, a2: int) -> BetaMatrix:
    """β on the pattern k = (3, 1) whose ideal is (x³, xy − a₁x², y² − a₂x²)."""

    pattern = NormalPattern((3, 1))
    return BetaMatrix.from_slots(
        pattern,
        field,
        {(1, 1, 1): a1, (1, 2, 0): field.sub(field.coerce(a2), field.power(field.coerce(a1), 2))},
    )


def describe_beta(beta: BetaMatrix) -> dict[str, list[str]]:
    """Human readable nonzero entries, keyed "i,j"."""

    return {
        f"{i},{j}": [str(c) for c in values] for (i, j), values in sorted(beta.coeffs.items())
    }


def free_constant_pattern(pattern: NormalPattern) -> Sequence[Sequence[bool]]:
    """d×d grid marking entries of β̄(0) that may be nonzero."""

    allowed = constant_slots(pattern)
    return [[(i, j) in allowed for j in range(1, pattern.d + 1)] for i in range(1, pattern.d + 1)]
