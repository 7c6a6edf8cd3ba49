"""Brill–Noether calculators for punctual and global Hilbert schemes.

The per-stratum locus is computed exactly from the degeneracy loci of
shape-e matrices; the local statement is derived twice (closed form and
union over strata); the global statement is derived from the multiplicity
stratification and again by the nested-Hilbert-scheme recursion.
"""

from __future__ import annotations

import enum
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, Union

from .degloci import dim_mat_e
from .errors import InvalidFieldError, InvalidTypeError, VerificationFailure
from .exactalg import Field, Scalar, TruncatedPoly
from .hstype import (
    HSType,
    enumerate_types,
    grassmann_type,
    jumping_indices,
)
from .localring import IdealBasis, colength, min_generators, power_of_maximal

logger = logging.getLogger(__name__)


class Empty(enum.Enum):
    """Dimension of an empty locus."""

    EMPTY = "empty"

    def __str__(self) -> str:
        return self.value


EMPTY = Empty.EMPTY
Dimension = Union[int, Empty]


@dataclass(frozen=True)
class BNReport:
    level: str
    params: dict[str, Any]
    nonempty: bool
    dimension: Dimension
    tight: bool
    witness: str | None = None
    refs: tuple[str, ...] = ()
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.nonempty == (self.dimension is EMPTY):
            raise ValueError("dimension must be an integer exactly when the locus is nonempty")
        if self.tight and not self.nonempty:
            raise ValueError("an empty locus cannot be tight")

    def summary(self) -> tuple[bool, Dimension, bool]:
        return self.nonempty, self.dimension, self.tight

    def to_json(self) -> dict[str, Any]:
        return {
            "query": {"level": self.level, **self.params},
            "nonempty": self.nonempty,
            "dim": str(self.dimension) if self.dimension is EMPTY else self.dimension,
            "tight": self.tight,
            "witness": self.witness,
            "refs": list(self.refs),
            "details": self.details,
        }


def _empty(level: str, params: dict[str, Any], refs: tuple[str, ...], **details: Any) -> BNReport:
    return BNReport(level, params, False, EMPTY, False, None, refs, dict(details))


def local_expected_dimension(r: int, n: int) -> int:
    return n - r * (r + 1) // 2


def expected_dimension(r: int, n: int) -> int:
    return 2 * n + 2 - r * (r + 1)


# Strata

STRATUM_REFS = (
    "stratum locus nonempty iff r_min ≤ r ≤ d",
    "stratum bound n − r(r+1)/2 − (d − r), attained when length(e) ≥ d − r + 1",
)


def bn_stratum(T: HSType, r: int) -> BNReport:
    """Ideals of type T needing exactly r + 1 generators.

    The locus is D_{d−r}(Mat_e) × A^{n − d(d+1)/2}; its dimension comes from
    the degeneracy-locus maximization, and the closed-form bound and
    nonemptiness range are checked against it.
    """

    if r < 0:
        raise InvalidTypeError(f"r must be nonnegative, got {r}")
    jumps = jumping_indices(T)
    n, d = T.n, T.d
    params = {"type": list(T.t), "r": r}
    in_range = jumps.r_min <= r <= d
    if r > d:
        return _empty("stratum", params, STRATUM_REFS, r_min=jumps.r_min)

    locus = dim_mat_e(jumps.shape, d - r)
    if locus.nonempty != in_range:
        raise VerificationFailure(
            STRATUM_REFS[0], {"type": T.t, "r": r, "r_min": jumps.r_min}
        )
    if not locus.nonempty:
        return _empty("stratum", params, STRATUM_REFS, r_min=jumps.r_min)

    dimension = locus.dimension + n - d * (d + 1) // 2
    bound = n - r * (r + 1) // 2 - (d - r)
    detail = {"type": T.t, "r": r, "dimension": dimension, "bound": bound}
    if dimension > bound:
        raise VerificationFailure(STRATUM_REFS[1], detail)
    if jumps.length >= d - r + 1 and dimension != bound:
        raise VerificationFailure(STRATUM_REFS[1], detail)

    return BNReport(
        "stratum",
        params,
        True,
        dimension,
        True,
        witness=f"rank β̄(0) = {d - r}",
        refs=STRATUM_REFS,
        details={
            "r_min": jumps.r_min,
            "bound": bound,
            "bound_attained": dimension == bound,
            "shape": list(jumps.shape),
        },
    )


def grassmann_stratum(d: int, ell: int, r: int) -> BNReport:
    """The stratum between m^{d+1} and m^d, cross-checked against ℓ + r(d − r)."""

    report = bn_stratum(grassmann_type(d, ell), r)
    expected_nonempty = max(ell, d - ell) <= r <= d
    if report.nonempty != expected_nonempty or (
        report.nonempty and report.dimension != ell + r * (d - r)
    ):
        raise VerificationFailure(
            "Grassmannian stratum dimension ℓ + r(d − r)",
            {"d": d, "ell": ell, "r": r, "dimension": str(report.dimension)},
        )
    return report


# Local

LOCAL_REFS = (
    "local locus nonempty iff n ≥ r(r+1)/2",
    "local dimension n − r(r+1)/2; a single point m^r when it is zero",
)


def bn_local(r: int, n: int) -> BNReport:
    """Closed form. For r = 0 the locus is all of Hilb_n(A), of dimension n − 1."""

    if r < 0 or n < 1:
        raise InvalidTypeError(f"need r ≥ 0 and n ≥ 1, got r={r}, n={n}")
    params = {"r": r, "n": n}
    if r == 0:
        return BNReport(
            "local",
            params,
            True,
            n - 1,
            True,
            witness=f"curvilinear ideal (y, x^{n})",
            refs=LOCAL_REFS,
            details={"note": "every ideal qualifies; the curvilinear stratum is dense"},
        )
    rho = local_expected_dimension(r, n)
    if rho < 0:
        return _empty("local", params, LOCAL_REFS, expected=rho)
    witness = f"m^{r}" if rho == 0 else f"type (1, …, {r}) stratum"
    return BNReport("local", params, True, rho, True, witness, LOCAL_REFS, {"expected": rho})


@dataclass(frozen=True)
class StrataContribution:
    type: HSType
    r_exact: int
    dimension: int


def local_contributions(r: int, n: int) -> list[StrataContribution]:
    """Every nonempty BN_{=r'}(Z_T) with |T| = n and r' ≥ r."""

    found: list[StrataContribution] = []
    for T in enumerate_types(n):
        for r_exact in range(max(r, 0), T.d + 1):
            report = bn_stratum(T, r_exact)
            if report.nonempty:
                found.append(StrataContribution(T, r_exact, report.dimension))
    return found


def bn_local_via_strata(r: int, n: int) -> BNReport:
    if r < 0 or n < 1:
        raise InvalidTypeError(f"need r ≥ 0 and n ≥ 1, got r={r}, n={n}")
    params = {"r": r, "n": n}
    refs = ("local locus is the union of the stratum loci",)
    contributions = local_contributions(r, n)
    if not contributions:
        return _empty("local", params, refs)
    best = max(c.dimension for c in contributions)
    dominant = sorted(
        {str(c.type) for c in contributions if c.dimension == best}
    )
    return BNReport(
        "local",
        params,
        True,
        best,
        True,
        witness=f"type ({dominant[0]})",
        refs=refs,
        details={"dominant_types": dominant},
    )


def local_order_profile(r: int, n: int) -> dict[int, int]:
    """Largest stratum contribution per order d, for r' ≥ r."""

    profile: dict[int, int] = {}
    for c in local_contributions(r, n):
        profile[c.type.d] = max(profile.get(c.type.d, c.dimension), c.dimension)
    return dict(sorted(profile.items()))


# Global

GLOBAL_REFS = (
    "global locus nonempty iff 2n + 2 − r(r+1) ≥ 2",
    "global codimension r(r+1) in Hilb_n(S) × S",
)


def multiplicity_strata(r: int, n: int) -> list[tuple[int, int]]:
    """(m, dim BN^{(m)}) where m is the colength of the ideal at the marked point.

    dim BN^{(m)} = dim BN^loc_{r,m} + 2 + 2(n − m); m = 0 only occurs for r = 0.
    """

    if r < 0 or n < 0:
        raise InvalidTypeError(f"need r ≥ 0 and n ≥ 0, got r={r}, n={n}")
    strata: list[tuple[int, int]] = []
    if r == 0:
        strata.append((0, 2 + 2 * n))
    for m in range(max(1, r * (r + 1) // 2), n + 1):
        local = bn_local(r, m)
        if not local.nonempty:
            continue
        dimension = local.dimension + 2 + 2 * (n - m)
        if r >= 1 and dimension != 2 * n + 2 - m - r * (r + 1) // 2:
            raise VerificationFailure(
                "multiplicity stratum dimension 2n + 2 − m − r(r+1)/2",
                {"r": r, "n": n, "m": m, "dimension": dimension},
            )
        strata.append((m, dimension))
    for (m1, d1), (m2, d2) in zip(strata, strata[1:]):
        if d2 >= d1:
            raise VerificationFailure(
                "multiplicity strata strictly decrease in m",
                {"r": r, "n": n, "m": [m1, m2], "dims": [d1, d2]},
            )
    return strata


def bn_global(r: int, n: int) -> BNReport:
    params = {"r": r, "n": n}
    strata = multiplicity_strata(r, n)
    rho = expected_dimension(r, n)
    if (rho >= 2) != bool(strata):
        raise VerificationFailure(GLOBAL_REFS[0], {"r": r, "n": n, "rho": rho})
    if not strata:
        return _empty("global", params, GLOBAL_REFS, expected=rho)
    m, dimension = strata[0]
    if dimension != rho:
        raise VerificationFailure(GLOBAL_REFS[1], {"r": r, "n": n, "dimension": dimension})
    witness = (
        f"(m_p^{r}·J, p) with colength(J) = {n - r * (r + 1) // 2}" if r else "(I, p), p ∉ V(I)"
    )
    return BNReport(
        "global",
        params,
        True,
        dimension,
        True,
        witness,
        GLOBAL_REFS,
        {"expected": rho, "dominant_multiplicity": m, "strata": [list(s) for s in strata]},
    )


def global_witness(r: int, n: int, field: Field) -> dict[str, Any]:
    """Check that m^r is the local part of a generic point: colength r(r+1)/2 and r + 1 generators."""

    if r < 1 or n < r * (r + 1) // 2:
        raise InvalidTypeError(f"BN_{{{r},{n}}} has no witness of the form m_p^r·J")
    ideal = power_of_maximal(field, r, r + 2)
    length, mu = colength(ideal), min_generators(ideal)
    if length != r * (r + 1) // 2 or mu != r + 1:
        raise VerificationFailure(
            "m^r has colength r(r+1)/2 and r + 1 generators",
            {"r": r, "colength": length, "mu": mu},
        )
    return {
        "r": r,
        "n": n,
        "local_part": f"m^{r}",
        "local_colength": length,
        "generators": mu,
        "residual_colength": n - length,
    }


# Nested recursion


@dataclass(frozen=True)
class RecursionReport:
    n_max: int
    checked: int
    table: dict[tuple[int, int], Dimension]


def nested_recursion_verify(n_max: int) -> RecursionReport:
    """Rebuild every BN_{r,n}, r, n ≤ n_max, from the recursion through Hilb†.

    A point of BN_{=r'−1, n−r} lifts to a Grass(r, r') of nested ideals, so
    the preimage has dimension dim BN_{r'−1,n−r} + r(r' − r).
    """

    if n_max < 1:
        raise InvalidTypeError(f"n_max must be positive, got {n_max}")
    memo: dict[tuple[int, int], Dimension] = {}

    def derive(r: int, n: int) -> Dimension:
        if (r, n) in memo:
            return memo[(r, n)]
        if n == 0:
            value: Dimension = 2 if r == 0 else EMPTY
        elif r > n:
            value = EMPTY
        elif r == 0:
            value = 2 * n + 2
        else:
            rho = expected_dimension(r, n)
            pieces = []
            for r_prime in range(r, n - r + 2):
                below = derive(r_prime - 1, n - r)
                if below is EMPTY:
                    continue
                piece = below + r * (r_prime - r)
                drop = (r_prime - 1) * (r_prime - r)
                if piece != rho - drop or drop < 0 or (drop == 0) != (r_prime == r):
                    raise VerificationFailure(
                        "preimage dimension ρ − (r′ − 1)(r′ − r), maximal only at r′ = r",
                        {"r": r, "n": n, "r_prime": r_prime, "piece": piece, "rho": rho},
                    )
                pieces.append(piece)
            value = max(pieces) if pieces else EMPTY
        memo[(r, n)] = value
        return value

    checked = 0
    for n in range(n_max + 1):
        for r in range(n_max + 1):
            derived = derive(r, n)
            rho = expected_dimension(r, n)
            nonempty = derived is not EMPTY
            if nonempty != (rho >= 2) or nonempty != (n >= r * (r + 1) // 2):
                raise VerificationFailure(
                    "recursion nonempty iff ρ ≥ 2 iff n ≥ r(r+1)/2",
                    {"r": r, "n": n, "derived": str(derived), "rho": rho},
                )
            closed = bn_global(r, n)
            if closed.dimension != derived or (nonempty and derived != rho):
                raise VerificationFailure(
                    "recursion agrees with the closed form",
                    {"r": r, "n": n, "derived": str(derived), "closed": str(closed.dimension)},
                )
            checked += 1
    logger.info("Nested recursion verified on %d pairs up to n = %d", checked, n_max)
    return RecursionReport(n_max, checked, dict(memo))


def expected_dimension_chain(rho: int, length: int = 4) -> list[tuple[int, int]]:
    """BN_{r−1,n−r} ≅ BN_{r,n} once 2r ≥ ρ: the chain of (r, n) sharing ρ_{r,n} = rho."""

    if rho < 2 or rho % 2:
        raise InvalidTypeError(f"expected dimensions are even and at least 2, got {rho}")
    r = (rho + 1) // 2
    n = (rho - 2 + r * (r + 1)) // 2
    chain = [(r - 1, n - r)]
    for _ in range(length - 1):
        chain.append((r, n))
        r, n = r + 1, n + r + 1
    for r_i, n_i in chain:
        report = bn_global(r_i, n_i)
        if report.dimension != rho:
            raise VerificationFailure(
                "expected-dimension chain", {"r": r_i, "n": n_i, "dimension": str(report.dimension)}
            )
    return chain


# Veronese


def veronese_ideal(r: int, a: Sequence[Scalar], field: Field) -> IdealBasis:
    """(x^{r+1}, x^{r−1}y − a_1 x^r, …, y^r − a_r x^r)."""

    cap = r * (r + 1) // 2 + 3
    gens = [TruncatedPoly.x(field, cap, r + 1)]
    for i, value in enumerate(a, start=1):
        gens.append(
            TruncatedPoly.monomial(field, cap, r - i, i)
            - TruncatedPoly.monomial(field, cap, r, 0, value)
        )
    return IdealBasis.of(gens)


def on_veronese_curve(a: Sequence[Scalar], field: Field) -> bool:
    a1 = field.coerce(a[0])
    return all(field.coerce(value) == field.power(a1, i) for i, value in enumerate(a, start=1))


def veronese_check(r: int, a: Sequence[Scalar], field: Field) -> bool:
    """μ(I) = r + 1 for the ideal of ``a``, which must match a_i = a_1^i."""

    if r < 2:
        raise InvalidTypeError(f"the Veronese check needs r ≥ 2, got {r}")
    if len(a) != r:
        raise InvalidTypeError(f"expected {r} coordinates, got {len(a)}")
    if not field.is_rational and field.characteristic <= r * (r + 1) // 2 + 1:
        raise InvalidFieldError(f"{field} is too small for r = {r}")
    ideal = veronese_ideal(r, a, field)
    maximal = min_generators(ideal) == r + 1
    closed = on_veronese_curve(a, field)
    if maximal != closed:
        raise VerificationFailure(
            "Veronese locus a_i = a_1^i",
            {"r": r, "a": [str(v) for v in a], "mu_max": maximal, "closed": closed},
        )
    return maximal
