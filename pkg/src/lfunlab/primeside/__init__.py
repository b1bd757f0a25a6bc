"""Prime-side machinery: the von Mangoldt-weighted counting function, its
statistics, truncated explicit-formula reconstruction, and Perron inversion."""

from ..sieve import von_mangoldt_table
from .profile import RepresentationProfile, conductor
from .psi import (
    PrimePowerCoeffs,
    PsiSeries,
    PsiStep,
    classical_psi_step,
    gl2_prime_power_coeffs,
    gl2_psi_step,
    psi,
    sample_psi,
    subtract_main_term,
)
from .perron import PerronResult, perron_truncated, weighted_dirichlet_sum
from .explicit import (
    ExplicitFormulaResult,
    ZeroCountEnvelope,
    ZeroSet,
    load_zero_table,
    truncated_explicit_formula,
    zero_count_envelope,
)
from .stats import (
    ConstantWindow,
    LogSquaredWindow,
    MeanSquareResult,
    OmegaResult,
    ScaledSupResult,
    WindowedVarianceResult,
    grh_scaled_sup,
    mean_square,
    omega_statistic,
    windowed_variance,
)

__all__ = [
    "ConstantWindow",
    "ExplicitFormulaResult",
    "LogSquaredWindow",
    "MeanSquareResult",
    "OmegaResult",
    "PerronResult",
    "PrimePowerCoeffs",
    "PsiSeries",
    "PsiStep",
    "RepresentationProfile",
    "ScaledSupResult",
    "WindowedVarianceResult",
    "ZeroCountEnvelope",
    "ZeroSet",
    "classical_psi_step",
    "conductor",
    "gl2_prime_power_coeffs",
    "gl2_psi_step",
    "grh_scaled_sup",
    "load_zero_table",
    "mean_square",
    "omega_statistic",
    "perron_truncated",
    "psi",
    "sample_psi",
    "subtract_main_term",
    "truncated_explicit_formula",
    "von_mangoldt_table",
    "weighted_dirichlet_sum",
    "windowed_variance",
    "zero_count_envelope",
]
