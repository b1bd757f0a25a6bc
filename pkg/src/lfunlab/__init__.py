"""Coefficients of classical and automorphic L-functions at desk scale:
local Satake algebra with mechanically verified combinatorial bounds,
exact coefficient series and sign-change scans, and the prime-side
counting function with its explicit-formula and short-interval statistics."""

__version__ = "0.1.0"

from .coefficients import (
    CoefficientSeries,
    DeligneReport,
    HeckeReport,
    NewformSpec,
    extend_multiplicatively,
    generate_delta,
    prime_values,
    verify_deligne,
    verify_hecke_relations,
)
from .errors import (
    CapacityError,
    ConsistencyError,
    DataFormatError,
    DegenerateGridError,
    IncompleteZerosError,
    LfunlabError,
    MissingPrimeError,
    NoSignChangeError,
    PreconditionError,
    QuadratureError,
    WindowError,
)
from .satake import (
    LocalCoefficientTable,
    RankinSelbergLocalTable,
    SatakeLocalData,
    brumley_check,
    homogeneous_sums,
    lambda_sum_lower_bound,
    local_table,
    power_sum_unit_index,
    power_sums,
    random_unimodular_det_one,
    rankin_selberg_table,
    satake_from_hecke,
)
from .signs import (
    GrowthFit,
    LinnikCheck,
    SignScanReport,
    first_positive,
    first_sign_change,
    growth_exponent,
    linnik_bound_check,
    prime_side_sign_scan,
    sign_density,
    weighted_partial_sum,
)
from .sieve import von_mangoldt_table
