"""Truncated explicit-formula reconstruction against an ingested zero table."""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from ..errors import DataFormatError, IncompleteZerosError, PreconditionError
from .profile import RepresentationProfile, conductor


@dataclass(frozen=True, eq=False)
class ZeroSet:
    """Positive ordinates of nontrivial zeros, taken on the critical line.

    Only the positive half is stored; consumers pair each gamma with -gamma
    analytically.  `completeness_T` is the largest height up to which the
    list is asserted complete.
    """

    ordinates: np.ndarray
    grh: bool
    source: str
    completeness_T: float

    def __post_init__(self):
        ords = np.asarray(self.ordinates, dtype=float)
        if ords.size:
            if ords.min() <= 0:
                raise DataFormatError("zero ordinates must be positive")
            if np.any(np.diff(ords) <= 0):
                raise DataFormatError("zero ordinates must be strictly ascending")
        object.__setattr__(self, "ordinates", ords)

    def up_to(self, T: float) -> np.ndarray:
        if T > self.completeness_T:
            raise IncompleteZerosError(
                f"T={T} exceeds completeness height {self.completeness_T}"
            )
        return self.ordinates[self.ordinates <= T]


def load_zero_table(path: str | Path) -> ZeroSet:
    """Read a zero table: one positive decimal ordinate per line, ascending,
    '#' comments, optional header line 'completeness_T=<value>'."""
    path = Path(path)
    ordinates: list[float] = []
    completeness: Optional[float] = None
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("completeness_T"):
            key, _, val = line.partition("=")
            if key.strip() != "completeness_T" or not val.strip():
                raise DataFormatError(f"{path}:{lineno}: malformed header {raw!r}")
            completeness = float(val.strip())
            continue
        try:
            ordinates.append(float(line))
        except ValueError as exc:
            raise DataFormatError(f"{path}:{lineno}: not a decimal ordinate: {raw!r}") from exc
    if completeness is None:
        completeness = ordinates[-1] if ordinates else 0.0
    return ZeroSet(
        ordinates=np.asarray(ordinates),
        grh=True,
        source=str(path),
        completeness_T=completeness,
    )


@dataclass(frozen=True)
class ExplicitFormulaResult:
    estimate: float
    zero_sum: float
    main_term: float
    classical_correction: float
    zeros_used: int
    error_budget: dict[str, float]

    @property
    def error_budget_total(self) -> float:
        return sum(self.error_budget.values())


def truncated_explicit_formula(
    x: float,
    T: float,
    zeros: ZeroSet,
    profile: RepresentationProfile,
    include_main_term: bool,
) -> ExplicitFormulaResult:
    """psi(x) reconstructed as [main term] - sum_{0 < gamma <= T} 2 Re(x^rho / rho).

    The zero sum pairs +gamma with -gamma into twice its real part (zeros on
    the half line).  For the degree-1 case the Dirichlet series has a pole,
    contributing the main term x, and the reconstruction carries the two
    classical constants -log(2 pi) and -(1/2) log(1 - x^-2); for degree >= 2
    there is no main term and no such constants.  The error budget evaluates
    the truncation terms with constant 1 as a reference scale, never as a
    rigorous bound.
    """
    if not zeros.grh:
        raise PreconditionError("zero set must be marked as critical-line (grh) data")
    if x < 2:
        raise PreconditionError(f"x must be >= 2, got {x}")
    if abs(x - round(x)) < 1e-9:
        raise PreconditionError(f"x={x} is too close to an integer; use a half-integer")
    if include_main_term and profile.m != 1:
        raise PreconditionError("the main term belongs to the degree-1 case only")
    gammas = zeros.up_to(T)
    sqrt_x = math.sqrt(x)
    logx = math.log(x)
    rho = 0.5 + 1j * gammas
    zero_sum = float(np.sum(2.0 * (sqrt_x * np.exp(1j * gammas * logx) / rho).real))

    main = x if include_main_term else 0.0
    correction = 0.0
    if include_main_term:
        correction = -math.log(2.0 * math.pi) - 0.5 * math.log(1.0 - x**-2)
    estimate = main - zero_sum + correction

    theta = profile.theta
    q_x = conductor(profile, 0.0) * x
    budget = {
        "truncation": min(x / T**0.25, x ** (1.0 + theta) / math.sqrt(T)) * math.log(q_x),
        "trivial_zeros": x**theta * logx,
        "contour": x * math.log(q_x) ** 2 / math.sqrt(T),
        "small_tail": math.log(T) / x,
    }
    return ExplicitFormulaResult(
        estimate=estimate,
        zero_sum=zero_sum,
        main_term=main,
        classical_correction=correction,
        zeros_used=int(gammas.size),
        error_budget=budget,
    )


@dataclass(frozen=True, eq=False)
class ZeroCountEnvelope:
    T_grid: np.ndarray
    counts: np.ndarray
    envelope_constant: float
    unit_constant: float


def zero_count_envelope(
    zeros: ZeroSet, profile: RepresentationProfile, T_grid: Sequence[float]
) -> ZeroCountEnvelope:
    """N(T) samples against C * T * log(Q*T): the smallest C that works on the
    grid, plus the analogous constant for unit-interval counts."""
    T_arr = np.asarray(sorted(T_grid), dtype=float)
    if T_arr.size == 0 or T_arr.min() <= 0:
        raise PreconditionError("T grid must contain positive heights")
    if T_arr.max() > zeros.completeness_T:
        raise IncompleteZerosError(
            f"grid reaches {T_arr.max()}, completeness {zeros.completeness_T}"
        )
    q0 = conductor(profile, 0.0)
    counts = np.searchsorted(zeros.ordinates, T_arr, side="right").astype(np.int64)
    denom = T_arr * np.log(q0 * T_arr)
    c_env = float(np.max(counts / denom)) if counts.size else 0.0

    c_unit = 0.0
    for T in T_arr:
        if T + 1.0 > zeros.completeness_T:
            continue
        unit = int(
            np.searchsorted(zeros.ordinates, T + 1.0, side="right")
            - np.searchsorted(zeros.ordinates, T, side="right")
        )
        c_unit = max(c_unit, unit / math.log(q0 * T))
    return ZeroCountEnvelope(
        T_grid=T_arr, counts=counts, envelope_constant=c_env, unit_constant=c_unit
    )
