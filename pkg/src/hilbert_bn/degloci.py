"""Degeneracy loci of upper-triangular matrices with a Γ zero pattern.

A d×d matrix is of type Γ when column j can only be nonzero in rows
1..Γ(j). Its rank-R locus splits by echelon sequence a = (a_1 < ⋯ < a_R),
and the stratum of a has dimension ρ^Γ(a) as long as Γ(a_i) ≥ i for every i.
Dimensions are certified by exhausting the admissible sequences. The census
enumerates every matrix over F_q as an independent check.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import Pool

from sympy import Symbol, expand, interpolate, sympify

from .errors import BudgetExceededError, InvalidTypeError, VerificationFailure
from .exactalg import Field, pivot_columns_mod_p
from .hstype import GammaProfile, gamma_from_shape

logger = logging.getLogger(__name__)

EchelonSeq = tuple[int, ...]
StratumKey = tuple[int, EchelonSeq]

DEFAULT_BUDGET = 10**8


def validate_echelon(a: Sequence[int], d: int) -> EchelonSeq:
    seq = tuple(int(v) for v in a)
    if any(v < 1 or v > d for v in seq):
        raise InvalidTypeError(f"echelon sequence {seq} leaves [1, {d}]")
    if any(x >= y for x, y in zip(seq, seq[1:])):
        raise InvalidTypeError(f"echelon sequence {seq} is not strictly increasing")
    return seq


def rho_gamma(gamma: GammaProfile, a: Sequence[int]) -> int:
    """ρ^Γ(a) = Rd − R(R−1)/2 + Σ (Γ(a_i) − a_i); may be negative."""

    seq = validate_echelon(a, gamma.d)
    R = len(seq)
    return R * gamma.d - R * (R - 1) // 2 + sum(gamma(ai) - ai for ai in seq)


def is_realizable(gamma: GammaProfile, a: Sequence[int]) -> bool:
    """Some matrix of type Γ has echelon sequence a iff Γ(a_i) ≥ i for all i."""

    return all(gamma(ai) >= i for i, ai in enumerate(a, start=1))


def realizable_sequences(gamma: GammaProfile, R: int) -> list[EchelonSeq]:
    return [
        a
        for a in itertools.combinations(range(1, gamma.d + 1), R)
        if is_realizable(gamma, a)
    ]


@dataclass(frozen=True)
class LocusDimension:
    """Nonemptiness and dimension of a rank-R locus, with its maximizing sequences."""

    nonempty: bool
    dimension: int | None
    maximizers: tuple[EchelonSeq, ...] = ()


def dim_deg_gamma(gamma: GammaProfile, R: int) -> LocusDimension:
    if not 0 <= R <= gamma.d:
        raise InvalidTypeError(f"rank {R} is outside [0, {gamma.d}]")
    criterion = all(gamma(k) - k >= R - gamma.d for k in range(1, gamma.d + 1))
    candidates = realizable_sequences(gamma, R)
    if criterion != bool(candidates):
        raise VerificationFailure(
            "degeneracy locus nonemptiness criterion",
            {"gamma": gamma.values, "R": R, "criterion": criterion, "sequences": len(candidates)},
        )
    if not candidates:
        return LocusDimension(False, None)
    values = {a: rho_gamma(gamma, a) for a in candidates}
    best = max(values.values())
    return LocusDimension(True, best, tuple(a for a in candidates if values[a] == best))


@dataclass(frozen=True)
class MatEDimension:
    shape: tuple[int, ...]
    R: int
    nonempty: bool
    dimension: int | None
    tight: bool
    bound: int


def dim_mat_e(e: Sequence[int], R: int) -> MatEDimension:
    """Rank-R locus inside the shape-e matrices, with the closed-form checks applied."""

    shape = tuple(int(v) for v in e)
    gamma = gamma_from_shape(shape)
    d = gamma.d
    locus = dim_deg_gamma(gamma, R)
    bound = R * (2 * d - R - 1) // 2
    detail = {"shape": shape, "R": R, "dimension": locus.dimension, "bound": bound}

    if locus.nonempty != (R <= d - max(shape)):
        raise VerificationFailure("rank bound for shape-e matrices", detail)
    if locus.nonempty:
        if locus.dimension > bound:
            raise VerificationFailure("dimension bound for shape-e matrices", detail)
        if len(shape) >= R + 1 and locus.dimension != bound:
            raise VerificationFailure("dimension bound attained for long shapes", detail)
    if len(shape) == 2:
        grassmann = R <= min(shape)
        if locus.nonempty != grassmann or (grassmann and locus.dimension != R * (d - R)):
            raise VerificationFailure("two-block shape is a Grassmannian cone", detail)

    tight = locus.nonempty and locus.dimension == bound
    return MatEDimension(shape, R, locus.nonempty, locus.dimension, tight, bound)


def stratum_point_count(gamma: GammaProfile, a: Sequence[int], q: int) -> int:
    """|D^{Γ,a}(F_q)| = q^{Σ(d − a_i) − R(R−1)/2} · Π (q^{Γ(a_i)} − q^{i−1}).

    Pivot columns are free in their Γ-window minus the current span; the
    other columns lie in the current span.
    """

    seq = validate_echelon(a, gamma.d)
    if not is_realizable(gamma, seq):
        return 0
    R = len(seq)
    exponent = sum(gamma.d - ai for ai in seq) - R * (R - 1) // 2
    return q**exponent * math.prod(q ** gamma(ai) - q ** (i - 1) for i, ai in enumerate(seq, 1))


def stratum_point_polynomial(gamma: GammaProfile, a: Sequence[int], variable: Symbol):
    seq = validate_echelon(a, gamma.d)
    if not is_realizable(gamma, seq):
        return sympify(0)
    R = len(seq)
    exponent = sum(gamma.d - ai for ai in seq) - R * (R - 1) // 2
    product = sympify(1)
    for i, ai in enumerate(seq, 1):
        product *= variable ** gamma(ai) - variable ** (i - 1)
    return expand(variable**exponent * product)


# Census


def free_entries(gamma: GammaProfile) -> list[tuple[int, int]]:
    """Positions (i, j), 1-based, with i ≤ Γ(j), in row-major order."""

    return sorted((i, j) for j in range(1, gamma.d + 1) for i in range(1, gamma(j) + 1))


@dataclass(frozen=True)
class RankCensus:
    q: int
    shape: tuple[int, ...]
    counts: dict[StratumKey, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def realized(self) -> set[StratumKey]:
        return {key for key, count in self.counts.items() if count}

    def rank_totals(self) -> dict[int, int]:
        totals: Counter[int] = Counter()
        for (R, _), count in self.counts.items():
            totals[R] += count
        return dict(sorted(totals.items()))

    def rows(self) -> list[dict[str, object]]:
        """Canonically ordered records (q, e, R, a, count)."""

        return [
            {"q": self.q, "e": list(self.shape), "R": R, "a": list(a), "count": count}
            for (R, a), count in sorted(self.counts.items())
        ]


def _census_shard(task: tuple[tuple[int, ...], int, tuple[int, ...]]) -> Counter[StratumKey]:
    shape, q, prefix = task
    gamma = gamma_from_shape(shape)
    d = gamma.d
    positions = free_entries(gamma)
    tail = len(positions) - len(prefix)
    counts: Counter[StratumKey] = Counter()
    for suffix in itertools.product(range(q), repeat=tail):
        rows = [[0] * d for _ in range(d)]
        for (i, j), value in zip(positions, prefix + suffix):
            rows[i - 1][j - 1] = value
        pivots = pivot_columns_mod_p(rows, q, d)
        counts[(len(pivots), pivots)] += 1
    return counts


def _shard_prefixes(q: int, entries: int, workers: int) -> list[tuple[int, ...]]:
    if workers <= 1 or entries == 0:
        return [()]
    length = 0
    while length < entries and q**length < 4 * workers:
        length += 1
    return list(itertools.product(range(q), repeat=length))


def census(
    e: Sequence[int],
    q: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> RankCensus:
    """Count every shape-e matrix over F_q by (rank, echelon sequence).

    Raises:
        BudgetExceededError: when q^{n_e} exceeds ``budget``.
    """

    shape = tuple(int(v) for v in e)
    Field.prime(q)
    gamma = gamma_from_shape(shape)
    entries = len(free_entries(gamma))
    size = q**entries
    if size > budget:
        raise BudgetExceededError(
            f"census of shape {shape} over F_{q} needs {size} matrices, budget is {budget}"
        )

    prefixes = _shard_prefixes(q, entries, workers)
    tasks = [(shape, q, prefix) for prefix in prefixes]
    logger.info(
        "Census of shape %s over F_%d: %d matrices in %d shard(s)", shape, q, size, len(tasks)
    )
    if workers > 1 and len(tasks) > 1:
        with Pool(processes=workers) as pool:
            partials = pool.map(_census_shard, tasks)
    else:
        partials = [_census_shard(task) for task in tasks]

    merged: Counter[StratumKey] = Counter()
    for partial in partials:
        merged.update(partial)
    result = RankCensus(q, shape, dict(sorted(merged.items())))
    if result.total != size:
        raise VerificationFailure(
            "census covers every matrix", {"shape": shape, "q": q, "total": result.total}
        )
    return result


@dataclass(frozen=True)
class RealizationReport:
    shape: tuple[int, ...]
    q: int
    realized: tuple[StratumKey, ...]
    max_rank: int
    counts: dict[StratumKey, int]


def predicted_strata(gamma: GammaProfile) -> set[StratumKey]:
    return {
        (R, a)
        for R in range(gamma.d + 1)
        for a in realizable_sequences(gamma, R)
    }


def verify_realization(
    e: Sequence[int],
    q: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    result: RankCensus | None = None,
) -> RealizationReport:
    """Census-realized (R, a) pairs against Γ(a_i) ≥ i, plus exact stratum counts."""

    shape = tuple(int(v) for v in e)
    gamma = gamma_from_shape(shape)
    result = result or census(shape, q, budget=budget, workers=workers)
    realized = result.realized()
    predicted = predicted_strata(gamma)

    unexpected = sorted(realized - predicted)
    if unexpected:
        R, a = unexpected[0]
        raise VerificationFailure(
            "realized echelon sequences satisfy Γ(a_i) ≥ i",
            {"shape": shape, "q": q, "R": R, "a": a},
        )
    missing = sorted(predicted - realized)
    if missing:
        R, a = missing[0]
        raise VerificationFailure(
            "every admissible echelon sequence is realized",
            {"shape": shape, "q": q, "R": R, "a": a},
        )

    max_rank = max(R for R, _ in realized)
    if max_rank != gamma.d - max(shape):
        raise VerificationFailure(
            "maximal rank is d − max e_j", {"shape": shape, "q": q, "max_rank": max_rank}
        )

    for (R, a), count in result.counts.items():
        expected = stratum_point_count(gamma, a, q)
        if count != expected:
            raise VerificationFailure(
                "stratum point count",
                {"shape": shape, "q": q, "R": R, "a": a, "count": count, "expected": expected},
            )

    return RealizationReport(shape, q, tuple(sorted(realized)), max_rank, dict(result.counts))


@dataclass(frozen=True)
class GrowthReport:
    shape: tuple[int, ...]
    by_rank: dict[int, tuple[EchelonSeq, ...]]


def growth_check(
    e: Sequence[int],
    *,
    budget: int = DEFAULT_BUDGET,
    censuses: tuple[RankCensus, RankCensus] | None = None,
) -> GrowthReport:
    """Sequences whose stratum grows fastest from F_2 to F_3 maximize ρ^Γ.

    Only meaningful for d ≤ 4, where it holds for every shape.
    """

    shape = tuple(int(v) for v in e)
    gamma = gamma_from_shape(shape)
    if gamma.d > 4:
        raise InvalidTypeError("growth check is calibrated for d ≤ 4")
    small, large = censuses or (census(shape, 2, budget=budget), census(shape, 3, budget=budget))

    by_rank: dict[int, tuple[EchelonSeq, ...]] = {}
    for R in range(1, gamma.d + 1):
        growth = {
            a: Fraction(large.counts[(R2, a)], small.counts[(R2, a)])
            for (R2, a) in small.counts
            if R2 == R and small.counts[(R2, a)] and (R2, a) in large.counts
        }
        if not growth:
            continue
        fastest = max(growth.values())
        argmax = tuple(sorted(a for a, ratio in growth.items() if ratio == fastest))
        maximizers = set(dim_deg_gamma(gamma, R).maximizers)
        if not set(argmax) <= maximizers:
            raise VerificationFailure(
                "fastest-growing strata maximize ρ^Γ",
                {"shape": shape, "R": R, "argmax": argmax, "maximizers": sorted(maximizers)},
            )
        by_rank[R] = argmax
    return GrowthReport(shape, by_rank)


@dataclass(frozen=True)
class FitReport:
    shape: tuple[int, ...]
    R: int
    counts: dict[int, int]
    interpolant: str
    exact: str
    interpolant_matches: bool


def fit_experiment(
    e: Sequence[int],
    R: int,
    qs: Iterable[int] = (2, 3, 5, 7),
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> FitReport:
    """Fit |D_R(Mat_e)(F_q)| across q; reports the fit and asserts nothing."""

    shape = tuple(int(v) for v in e)
    gamma = gamma_from_shape(shape)
    counts = {
        q: census(shape, q, budget=budget, workers=workers).rank_totals().get(R, 0)
        for q in sorted(set(qs))
    }
    variable = Symbol("q")
    interpolant = expand(interpolate(list(counts.items()), variable))
    exact = expand(
        sum(
            (stratum_point_polynomial(gamma, a, variable) for a in realizable_sequences(gamma, R)),
            sympify(0),
        )
    )
    return FitReport(
        shape,
        R,
        counts,
        str(interpolant),
        str(exact),
        expand(interpolant - exact) == 0,
    )
