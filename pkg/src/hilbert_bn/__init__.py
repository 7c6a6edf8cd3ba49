"""Exact engine for Brill–Noether loci in punctual Hilbert schemes of points."""

from .bn import (
    EMPTY,
    BNReport,
    bn_global,
    bn_local,
    bn_local_via_strata,
    bn_stratum,
    nested_recursion_verify,
    veronese_check,
)
from .config import RunConfig
from .degloci import census, dim_deg_gamma, dim_mat_e, rho_gamma, verify_realization
from .errors import HilbertBNError, VerificationFailure
from .exactalg import ExactMatrix, Field, TruncatedPoly, det_poly, rank, rref_pivots
from .hstype import (
    HSType,
    dim_stratum,
    enumerate_types,
    gamma_from_shape,
    jumping_indices,
    partition_from_type,
    type_from_partition,
    validate_type,
)
from .iarrobino import BetaMatrix, beta_dims, ideal_from_beta, matrix_MP, sample_beta
from .localring import IdealBasis, colength, hilbert_samuel, min_generators, span_in_quotient

__all__ = [
    "EMPTY",
    "BNReport",
    "BetaMatrix",
    "ExactMatrix",
    "Field",
    "HSType",
    "HilbertBNError",
    "IdealBasis",
    "RunConfig",
    "TruncatedPoly",
    "VerificationFailure",
    "beta_dims",
    "bn_global",
    "bn_local",
    "bn_local_via_strata",
    "bn_stratum",
    "census",
    "colength",
    "det_poly",
    "dim_deg_gamma",
    "dim_mat_e",
    "dim_stratum",
    "enumerate_types",
    "gamma_from_shape",
    "hilbert_samuel",
    "ideal_from_beta",
    "jumping_indices",
    "matrix_MP",
    "min_generators",
    "nested_recursion_verify",
    "partition_from_type",
    "rank",
    "rho_gamma",
    "rref_pivots",
    "sample_beta",
    "span_in_quotient",
    "type_from_partition",
    "validate_type",
    "verify_realization",
    "veronese_check",
]
