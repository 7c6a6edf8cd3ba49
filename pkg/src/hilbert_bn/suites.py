"""Invariant suites run by ``verify``.

Each suite takes the run configuration and a size bound, raises
:class:`VerificationFailure` on the first violated statement and otherwise
returns a :class:`SuiteOutcome` with the number of checks performed.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from sympy import prevprime
from sympy.utilities.iterables import partitions

from . import bn, degloci, hstype, iarrobino, localring
from .config import RunConfig
from .errors import HilbertBNError, VerificationFailure
from .exactalg import Field, TruncatedPoly, det_poly

logger = logging.getLogger(__name__)

IARROBINO_FIELD = Field.prime(23)
VERONESE_FIELD = Field.prime(101)
SAMPLES_PER_TYPE = 20
ORACLE_SAMPLES_PER_TYPE = 3
VERONESE_RANDOM_VECTORS = 50

WORKED_TYPE = (1, 2, 3, 4, 5, 3, 3, 1)


@dataclass
class SuiteOutcome:
    name: str
    bound: int
    checks: int = 0
    details: dict[str, Any] = field(default_factory=dict)

    def check(self, condition: bool, ref: str, **detail: Any) -> None:
        self.checks += 1
        if not condition:
            raise VerificationFailure(ref, {"suite": self.name, **detail})


SuiteRunner = Callable[[RunConfig, int], SuiteOutcome]


def _strict_partition_count(n: int) -> int:
    return sum(1 for p in partitions(n) if all(m == 1 for m in p.values()))


def run_hstype(config: RunConfig, bound: int) -> SuiteOutcome:
    outcome = SuiteOutcome("hstype", bound)
    for n in range(1, bound + 1):
        types = hstype.enumerate_types(n)
        outcome.check(
            len(types) == _strict_partition_count(n) and len(set(types)) == len(types),
            "types of colength n match strict partitions of n",
            n=n,
            count=len(types),
        )
        for T in types:
            jumps = hstype.jumping_indices(T)
            pattern = hstype.partition_from_type(T)
            dim = hstype.dim_stratum(T)
            n_T, _ = iarrobino.beta_dims(T)
            outcome.check(T.n == n and jumps.d == T.d, "type sums", type=T.t)
            outcome.check(n_T == dim, "chart dimension is the stratum dimension", type=T.t)
            outcome.check(
                hstype.type_from_partition(pattern) == T,
                "partition and type are inverse",
                type=T.t,
            )
            outcome.check(
                hstype.jumps_from_partition(pattern) == jumps,
                "jumps read off the pattern",
                type=T.t,
            )
            outcome.check(
                dim <= n - 1 and (dim == n - 1) == (T.d == 1),
                "curvilinear stratum is the unique top-dimensional one",
                type=T.t,
                dim=dim,
            )

    worked = hstype.validate_type(WORKED_TYPE)
    outcome.check(
        hstype.partition_from_type(worked).k == (8, 6, 5, 2, 1)
        and hstype.jumping_indices(worked).shape == (1, 2, 2)
        and iarrobino.beta_dims(worked) == (15, 8)
        and hstype.gamma_from_shape((1, 2, 2)).values == (0, 1, 1, 3, 3),
        "worked 22-point example",
        type=WORKED_TYPE,
    )
    return outcome


def run_degloci(config: RunConfig, bound: int) -> SuiteOutcome:
    outcome = SuiteOutcome("degloci", bound)
    growth: dict[str, Any] = {}
    for d in range(1, bound + 1):
        for shape in hstype.compositions(d):
            censuses = tuple(
                degloci.census(shape, q, budget=config.budget, workers=config.workers)
                for q in (2, 3)
            )
            for result in censuses:
                degloci.verify_realization(shape, result.q, result=result)
                outcome.checks += 1
            for R in range(d + 1):
                degloci.dim_mat_e(shape, R)
                outcome.checks += 1
            if d <= 4:
                report = degloci.growth_check(shape, censuses=censuses)
                growth[",".join(map(str, shape))] = {
                    str(R): [list(a) for a in seqs] for R, seqs in report.by_rank.items()
                }
                outcome.checks += 1

    for d in range(2, max(bound, 8) + 1):
        for first in range(1, d):
            for R in range(d + 1):
                degloci.dim_mat_e((first, d - first), R)
                outcome.checks += 1

    gamma = hstype.gamma_from_shape((1, 2, 2))
    locus = degloci.dim_deg_gamma(gamma, 3)
    outcome.check(
        degloci.rho_gamma(gamma, (2, 4, 5)) == 8
        and locus.dimension == 8
        and (2, 4, 5) in locus.maximizers,
        "ρ^Γ on the worked shape",
        shape=(1, 2, 2),
    )
    outcome.details["growth_argmax"] = growth
    return outcome


def _beta_seed(config: RunConfig, T: hstype.HSType) -> list[int]:
    return [config.seed, *T.t]


def run_iarrobino(config: RunConfig, bound: int) -> SuiteOutcome:
    outcome = SuiteOutcome("iarrobino", bound)
    field_ = config.field_or(IARROBINO_FIELD)
    for n in range(1, bound + 1):
        for T in hstype.enumerate_types(n):
            pattern = hstype.partition_from_type(T)
            cap = config.cap or iarrobino.default_cap(pattern)
            gamma = hstype.gamma_from_shape(hstype.jumping_indices(T))
            outcome.check(
                iarrobino.constant_slots(pattern)
                == {(i, j) for j in range(1, T.d + 1) for i in range(1, gamma(j) + 1)},
                "free constants of β̄(0) follow the shape",
                type=T.t,
            )
            _check_monomial_chart(outcome, pattern, field_, cap)
            betas = iarrobino.sample_betas(pattern, field_, _beta_seed(config, T), SAMPLES_PER_TYPE)
            for index, beta in enumerate(betas):
                _check_beta(outcome, T, pattern, beta, cap, oracle=index < ORACLE_SAMPLES_PER_TYPE)

    worked = hstype.validate_type(WORKED_TYPE)
    pattern = hstype.partition_from_type(worked)
    beta = iarrobino.sample_beta(worked, config.seed, field_)
    _check_beta(outcome, worked, pattern, beta, iarrobino.default_cap(pattern), oracle=False)
    if config.explore_low_characteristic:
        outcome.details["low_characteristic"] = low_characteristic_experiment(config, bound)
    return outcome


def _check_monomial_chart(
    outcome: SuiteOutcome, pattern: hstype.NormalPattern, field_: Field, cap: int
) -> None:
    matrix = iarrobino.perturbed_matrix(pattern, iarrobino.BetaMatrix.zero(pattern, field_), cap)
    for s in range(pattern.d + 1):
        minor = det_poly(matrix[:s] + matrix[s + 1:])
        signed = minor if s % 2 == 0 else -minor
        expected = TruncatedPoly.monomial(field_, cap, pattern.row(s), s)
        outcome.check(
            signed == expected,
            "minors of M_P are the monomials u_s",
            pattern=pattern.k,
            s=s,
            minor=str(signed),
        )


def _check_beta(
    outcome: SuiteOutcome,
    T: hstype.HSType,
    pattern: hstype.NormalPattern,
    beta: iarrobino.BetaMatrix,
    cap: int,
    *,
    oracle: bool,
) -> None:
    ideal = iarrobino.ideal_from_beta(pattern, beta, cap)
    detail = {"type": T.t, "beta": iarrobino.describe_beta(beta)}
    outcome.check(localring.colength(ideal) == T.n, "colength of I(β) is n", **detail)
    outcome.check(localring.hs_type_of_ideal(ideal) == T, "type of I(β) is T", **detail)
    outcome.check(
        localring.meets_span_trivially(ideal, pattern.monomials()),
        "pattern monomials meet I(β) trivially",
        **detail,
    )
    mu = localring.min_generators(ideal)
    predicted = iarrobino.mu_predicted(beta)
    outcome.check(mu == predicted, "μ(I(β)) = d + 1 − rank β̄(0)", mu=mu, predicted=predicted, **detail)
    r_min = hstype.jumping_indices(T).r_min
    outcome.check(1 + r_min <= mu <= T.d + 1, "generator count range", mu=mu, **detail)
    if oracle:
        greedy = localring.min_generators_by_elimination(ideal)
        outcome.check(greedy == mu, "μ agrees with greedy elimination", greedy=greedy, mu=mu, **detail)


def low_characteristic_experiment(config: RunConfig, bound: int) -> dict[str, Any]:
    """Run the chart over F_p with p < n; record what happens, assert nothing."""

    records: dict[str, Any] = {}
    for n in range(3, bound + 1):
        p = prevprime(n)
        field_ = Field.prime(p)
        stats = {"p": p, "samples": 0, "type_ok": 0, "mu_ok": 0, "errors": 0}
        for T in hstype.enumerate_types(n):
            pattern = hstype.partition_from_type(T)
            for beta in iarrobino.sample_betas(pattern, field_, _beta_seed(config, T), 5):
                stats["samples"] += 1
                try:
                    ideal = iarrobino.ideal_from_beta(pattern, beta)
                    stats["type_ok"] += localring.hs_type_of_ideal(ideal) == T
                    stats["mu_ok"] += localring.min_generators(ideal) == iarrobino.mu_predicted(beta)
                except HilbertBNError:
                    stats["errors"] += 1
        records[str(n)] = stats
    return records


def run_bn(config: RunConfig, bound: int) -> SuiteOutcome:
    outcome = SuiteOutcome("bn", bound)
    for n in range(1, bound + 1):
        for r in range(0, n + 2):
            closed = bn.bn_local(r, n)
            via = bn.bn_local_via_strata(r, n)
            outcome.check(
                closed.summary() == via.summary(),
                "local locus: closed form equals union over strata",
                r=r,
                n=n,
                closed=str(closed.dimension),
                strata=str(via.dimension),
            )
            if r == 0:
                continue
            rho = bn.local_expected_dimension(r, n)
            outcome.check(closed.nonempty == (rho >= 0), "local nonemptiness", r=r, n=n)
            if rho < 0:
                continue
            profile = bn.local_order_profile(r, n)
            outcome.check(
                profile.get(r) == rho and all(v < rho for d, v in profile.items() if d > r),
                "order-r strata attain ρ^loc and higher orders fall short",
                r=r,
                n=n,
                profile={str(k): v for k, v in profile.items()},
            )
            if rho == 0:
                outcome.check(
                    via.details.get("dominant_types") == [",".join(map(str, range(1, r + 1)))],
                    "ρ^loc = 0 is the single point m^r",
                    r=r,
                    n=n,
                )

    for d in range(1, 7):
        for ell in range(d + 1):
            for r in range(d + 1):
                bn.grassmann_stratum(d, ell, r)
                outcome.checks += 1

    worked = bn.bn_stratum(hstype.validate_type(WORKED_TYPE), 2)
    outcome.check(worked.dimension == 15, "worked stratum at r = 2", dim=str(worked.dimension))
    for (r, n), expected in {(1, 1): 2, (2, 3): 2, (2, 5): 6, (0, 4): 10}.items():
        report = bn.bn_global(r, n)
        outcome.check(report.dimension == expected, "global spot value", r=r, n=n)

    field_ = config.field_or(VERONESE_FIELD)
    for r in range(1, 4):
        bn.global_witness(r, r * (r + 1) // 2 + 1, field_)
        outcome.checks += 1
    return outcome


def run_veronese(config: RunConfig, bound: int) -> SuiteOutcome:
    outcome = SuiteOutcome("veronese", bound)
    field_ = config.field_or(VERONESE_FIELD)
    for r in range(2, bound + 1):
        for t in range(11):
            a = [field_.power(field_.coerce(t), i) for i in range(1, r + 1)]
            outcome.check(bn.veronese_check(r, a, field_), "conforming vector is on the curve", r=r, t=t)

        rng = iarrobino.rng_for(np.random.SeedSequence([config.seed, r]))
        for _ in range(VERONESE_RANDOM_VECTORS):
            t = field_.random_element(rng)
            a = [field_.power(t, i) for i in range(1, r + 1)]
            slot = int(rng.integers(1, r))
            delta = field_.random_element(rng) or field_.one()
            a[slot] = field_.add(a[slot], delta)
            outcome.check(
                not bn.veronese_check(r, a, field_),
                "perturbed vector leaves the curve",
                r=r,
                a=[str(v) for v in a],
            )
            uniform = [field_.random_element(rng) for _ in range(r)]
            bn.veronese_check(r, uniform, field_)
            outcome.checks += 1

    for a1, a2 in ((3, 9), (3, 10), (0, 0)):
        chart = iarrobino.ideal_from_beta(
            hstype.NormalPattern((3, 1)), iarrobino.veronese_chart_beta(field_, a1, a2)
        )
        direct = bn.veronese_ideal(2, [a1, a2], field_)
        outcome.check(
            localring.ideals_equal(chart.truncate(direct.cap), direct),
            "chart k = (3, 1) reproduces the Veronese ideal",
            a=[a1, a2],
        )
    return outcome


def run_recursion(config: RunConfig, bound: int) -> SuiteOutcome:
    outcome = SuiteOutcome("recursion", bound)
    report = bn.nested_recursion_verify(bound)
    outcome.checks += report.checked
    chains = {rho: bn.expected_dimension_chain(rho) for rho in (2, 4, 6)}
    outcome.check(chains[2][:3] == [(0, 0), (1, 1), (2, 3)], "chain S ≅ BN_{1,1} ≅ BN_{2,3}")
    outcome.check(
        bn.expected_dimension(0, 1) == bn.expected_dimension(1, 2) == 4,
        "ρ_{0,1} = ρ_{1,2} = 4",
    )
    outcome.details["chains"] = {str(rho): [list(p) for p in chain] for rho, chain in chains.items()}
    return outcome


SUITES: dict[str, SuiteRunner] = {
    "hstype": run_hstype,
    "degloci": run_degloci,
    "iarrobino": run_iarrobino,
    "bn": run_bn,
    "veronese": run_veronese,
    "recursion": run_recursion,
}
