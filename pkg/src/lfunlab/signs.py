"""Sign scans over real coefficient sequences.

Sign decisions on exact integer series use the integers directly; floating
series get a 1e-12 dead zone, with values inside it counted as zero rather
than guessed.  Bound checks report pass/fail with implied constant 1; a
failure against a bound that hides a constant is labeled inconclusive, never
a refutation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .coefficients import CoefficientSeries
from .errors import DegenerateGridError, NoSignChangeError, PreconditionError
from .primeside.psi import geometric_grid

SIGN_TOL_FLOAT = 1e-12
LINNIK_EXPONENT = 29.0 / 60.0


def _coprime_mask(n_max: int, level: int) -> np.ndarray:
    """mask[n] = 1 iff gcd(n, level) = 1, as a 1-based boolean array."""
    mask = np.ones(n_max + 1, dtype=bool)
    mask[0] = False
    if level > 1:
        rest = level
        p = 2
        while p * p <= rest:
            if rest % p == 0:
                mask[p::p] = False
                while rest % p == 0:
                    rest //= p
            p += 1
        if rest > 1:
            mask[rest::rest] = False
    return mask


def _sign_array(series: CoefficientSeries) -> np.ndarray:
    """Signs of lambda(n) as a 1-based int8 array (-1, 0, +1)."""
    if series.integer_values is not None:
        # float conversion is sign-exact for integers in double range
        vals = np.array([float(v) for v in series.integer_values])
    else:
        vals = series.values.copy()
        vals[np.abs(vals) <= SIGN_TOL_FLOAT] = 0.0
    return np.sign(vals).astype(np.int8)


def first_sign_change(series: CoefficientSeries, level: Optional[int] = None) -> Optional[int]:
    """Smallest n with (n, level) = 1 and lambda(n) < 0, or None up to n_max."""
    level = series.spec.level if level is None else level
    signs = _sign_array(series)
    mask = _coprime_mask(series.n_max, level)
    hits = np.nonzero((signs < 0) & mask)[0]
    return int(hits[0]) if hits.size else None


def first_positive(series: CoefficientSeries, level: Optional[int] = None) -> Optional[int]:
    level = series.spec.level if level is None else level
    signs = _sign_array(series)
    mask = _coprime_mask(series.n_max, level)
    hits = np.nonzero((signs > 0) & mask)[0]
    return int(hits[0]) if hits.size else None


@dataclass(frozen=True)
class LinnikCheck:
    n_first: int
    bound: float
    passed: bool
    weight: int
    level: int


def linnik_bound_check(
    series: CoefficientSeries, k: Optional[int] = None, N: Optional[int] = None
) -> LinnikCheck:
    """First sign change against (k^2 N)^(29/60) with implied constant 1.

    Raises NoSignChangeError when no change occurs up to n_max, which is
    inconclusive rather than a counterexample.
    """
    k = series.spec.weight if k is None else k
    N = series.spec.level if N is None else N
    n_first = first_sign_change(series, N)
    if n_first is None:
        raise NoSignChangeError(
            f"no sign change up to n_max={series.n_max}; scan is inconclusive"
        )
    bound = float(k * k * N) ** LINNIK_EXPONENT
    return LinnikCheck(n_first=n_first, bound=bound, passed=n_first <= bound, weight=k, level=N)


@dataclass(frozen=True, eq=False)
class SignScanReport:
    level: int
    x_max: float
    first_negative: Optional[int]
    first_positive: Optional[int]
    x_grid: np.ndarray
    n_pos: np.ndarray
    n_neg: np.ndarray
    n_zero: np.ndarray
    coprime_counts: np.ndarray

    def __post_init__(self):
        total = self.n_pos + self.n_neg + self.n_zero
        if not np.array_equal(total, self.coprime_counts):
            raise PreconditionError("sign counts must partition the coprime integers")


def sign_density(
    series: CoefficientSeries,
    level: Optional[int] = None,
    x_grid: Optional[Sequence[float]] = None,
) -> SignScanReport:
    """Exact sign counts N+(x), N-(x), N0(x) on a geometric grid, by one scan."""
    level = series.spec.level if level is None else level
    if x_grid is None:
        x_grid = geometric_grid(min(10.0, float(series.n_max)), float(series.n_max))
    x_grid = np.asarray(x_grid, dtype=float)
    if np.any(np.diff(x_grid) <= 0):
        raise PreconditionError("x grid must be strictly ascending")
    signs = _sign_array(series)
    mask = _coprime_mask(series.n_max, level)
    pos = np.cumsum((signs > 0) & mask)
    neg = np.cumsum((signs < 0) & mask)
    zero = np.cumsum((signs == 0) & mask)
    cop = np.cumsum(mask)
    idx = np.minimum(np.floor(x_grid).astype(np.int64), series.n_max)
    return SignScanReport(
        level=level,
        x_max=float(x_grid[-1]),
        first_negative=first_sign_change(series, level),
        first_positive=first_positive(series, level),
        x_grid=x_grid,
        n_pos=pos[idx],
        n_neg=neg[idx],
        n_zero=zero[idx],
        coprime_counts=cop[idx],
    )


def weighted_partial_sum(
    series: CoefficientSeries, x: float, ell: int, level: Optional[int] = None
) -> float:
    """S(x) = sum_{n <= x, (n, level) = 1} lambda(n) * log^ell(x/n)."""
    if x < 1:
        raise PreconditionError(f"x must be >= 1, got {x}")
    if ell < 0:
        raise PreconditionError(f"ell must be >= 0, got {ell}")
    level = series.spec.level if level is None else level
    top = min(series.n_max, int(math.floor(x)))
    n = np.arange(1, top + 1)
    mask = _coprime_mask(top, level)[1:]
    weights = np.log(x / n.astype(float)) ** ell
    return float(np.sum(series.values[1 : top + 1][mask] * weights[mask]))


@dataclass(frozen=True, eq=False)
class GrowthFit:
    slope: float
    intercept: float
    x_grid: np.ndarray
    s_values: np.ndarray
    residuals: np.ndarray


def growth_exponent(
    series: CoefficientSeries,
    ell: int,
    level: Optional[int] = None,
    x_grid: Optional[Sequence[float]] = None,
) -> GrowthFit:
    """Least-squares slope of log max(|S(x)|, 1) against log x on a geometric grid."""
    level = series.spec.level if level is None else level
    if x_grid is None:
        x_grid = geometric_grid(10.0, float(series.n_max))
    x_grid = np.asarray(x_grid, dtype=float)
    if len(x_grid) < 3:
        raise DegenerateGridError(f"need at least 3 grid points, got {len(x_grid)}")
    s_vals = np.array([weighted_partial_sum(series, x, ell, level) for x in x_grid])
    y = np.log(np.maximum(np.abs(s_vals), 1.0))
    lx = np.log(x_grid)
    slope, intercept = np.polyfit(lx, y, 1)
    residuals = y - (slope * lx + intercept)
    return GrowthFit(
        slope=float(slope),
        intercept=float(intercept),
        x_grid=x_grid,
        s_values=s_vals,
        residuals=residuals,
    )


def prime_side_sign_scan(
    weighted: Sequence[float], n_max: Optional[int] = None, tol: float = SIGN_TOL_FLOAT
) -> Optional[int]:
    """First n where the sign of a(n)*Lambda(n) differs from the first nonzero sign."""
    arr = np.asarray(weighted, dtype=float)
    n_max = len(arr) - 1 if n_max is None else min(n_max, len(arr) - 1)
    first_sign = 0
    for n in range(1, n_max + 1):
        v = arr[n]
        if abs(v) <= tol:
            continue
        if first_sign == 0:
            first_sign = 1 if v > 0 else -1
            continue
        if (v > 0) != (first_sign > 0):
            return n
    return None
