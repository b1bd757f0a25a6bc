"""The von Mangoldt-weighted counting function as an exact step function.

psi(x) = sum_{n <= x} Lambda(n) a(n) is constant between consecutive prime
powers, so it is stored as (breakpoints, cumulative values); every integral
over it downstream is taken exactly segment by segment rather than by
sampled quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..coefficients import CoefficientSeries, principal_character
from ..errors import CapacityError, PreconditionError
from ..sieve import primes_up_to, smallest_prime_factor_table


@dataclass(frozen=True, eq=False)
class PrimePowerCoeffs:
    """a(p^k) for all prime powers p^k <= capacity, sorted by p^k."""

    n: np.ndarray
    p: np.ndarray
    k: np.ndarray
    a: np.ndarray
    level: int
    capacity: int

    def as_dict(self) -> dict[int, float]:
        return {int(n): float(a) for n, a in zip(self.n, self.a)}


def gl2_prime_power_coeffs(series: CoefficientSeries, n_max: Optional[int] = None) -> PrimePowerCoeffs:
    """Degree-2 prime-power coefficients from a coefficient series.

    a(p) = lambda(p), a(p^2) = lambda(p)^2 - 2*chi(p), then
    a(p^k) = lambda(p) a(p^{k-1}) - chi(p) a(p^{k-2}); equivalently the k-th
    power sums of the two local roots.
    """
    n_max = series.n_max if n_max is None else n_max
    if n_max > series.n_max:
        raise PreconditionError(f"series only reaches {series.n_max}, asked for {n_max}")
    if n_max < 2:
        raise PreconditionError(f"n_max must be >= 2, got {n_max}")
    level = series.spec.level
    spf = smallest_prime_factor_table(n_max)
    ns, ps, ks, vals = [], [], [], []
    for p in primes_up_to(n_max, spf):
        p = int(p)
        lp = float(series.values[p])
        chi = principal_character(p, level)
        prev2 = None  # a(p^{k-2}), undefined at k = 1
        prev = lp
        pk, k = p, 1
        while pk <= n_max:
            ns.append(pk)
            ps.append(p)
            ks.append(k)
            vals.append(prev)
            if pk > n_max // p:
                break
            nxt = lp * prev - chi * (prev2 if prev2 is not None else 2.0)
            prev2, prev = prev, nxt
            pk *= p
            k += 1
    order = np.argsort(np.asarray(ns))
    return PrimePowerCoeffs(
        n=np.asarray(ns, dtype=np.int64)[order],
        p=np.asarray(ps, dtype=np.int64)[order],
        k=np.asarray(ks, dtype=np.int64)[order],
        a=np.asarray(vals)[order],
        level=level,
        capacity=n_max,
    )


@dataclass(frozen=True, eq=False)
class PsiStep:
    """Right-continuous step function with jumps Lambda(n)*a(n) at prime powers."""

    breakpoints: np.ndarray
    increments: np.ndarray
    cumulative: np.ndarray
    capacity: int
    descriptor: str

    def value_at(self, x: float) -> float:
        if x > self.capacity:
            raise CapacityError(f"x={x} exceeds sieve capacity {self.capacity}")
        i = int(np.searchsorted(self.breakpoints, x, side="right"))
        return float(self.cumulative[i - 1]) if i > 0 else 0.0

    def values_at(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        if xs.size and xs.max() > self.capacity:
            raise CapacityError(f"grid reaches {xs.max()}, capacity {self.capacity}")
        idx = np.searchsorted(self.breakpoints, xs, side="right")
        padded = np.concatenate([[0.0], self.cumulative])
        return padded[idx]

    def weighted_sequence(self, n_max: Optional[int] = None) -> np.ndarray:
        """Dense 1-based array of Lambda(n)*a(n), n <= n_max."""
        n_max = self.capacity if n_max is None else n_max
        if n_max > self.capacity:
            raise CapacityError(f"n_max={n_max} exceeds capacity {self.capacity}")
        out = np.zeros(n_max + 1)
        mask = self.breakpoints <= n_max
        out[self.breakpoints[mask]] = self.increments[mask]
        return out


def _make_step(ns: np.ndarray, incs: np.ndarray, capacity: int, descriptor: str) -> PsiStep:
    return PsiStep(
        breakpoints=ns,
        increments=incs,
        cumulative=np.cumsum(incs),
        capacity=capacity,
        descriptor=descriptor,
    )


def classical_psi_step(n_max: int) -> PsiStep:
    """Degree-1 case: a(n) = 1, psi is the Chebyshev function."""
    if n_max < 2:
        raise PreconditionError(f"n_max must be >= 2, got {n_max}")
    spf = smallest_prime_factor_table(n_max)
    ns, incs = [], []
    for p in primes_up_to(n_max, spf):
        p = int(p)
        logp = math.log(p)
        pk = p
        while pk <= n_max:
            ns.append(pk)
            incs.append(logp)
            pk *= p
    order = np.argsort(np.asarray(ns))
    return _make_step(
        np.asarray(ns, dtype=np.int64)[order],
        np.asarray(incs)[order],
        n_max,
        "classical",
    )


def gl2_psi_step(series: CoefficientSeries, n_max: Optional[int] = None) -> PsiStep:
    """Degree-2 psi built from a coefficient series."""
    coeffs = gl2_prime_power_coeffs(series, n_max)
    logp = np.log(coeffs.p.astype(float))
    return _make_step(
        coeffs.n,
        logp * coeffs.a,
        coeffs.capacity,
        f"gl2:{series.spec.label}(k={series.spec.weight},N={series.spec.level})",
    )


def psi(x: float, step: PsiStep) -> float:
    """psi(x) = sum_{n <= x} Lambda(n) a(n); zero below 2."""
    if x < 2:
        return 0.0
    return step.value_at(x)


@dataclass(frozen=True, eq=False)
class PsiSeries:
    """psi sampled on an ascending grid, keeping the step source it came from."""

    x_grid: np.ndarray
    values: np.ndarray
    source: str
    step: PsiStep

    def __post_init__(self):
        if len(self.x_grid) != len(self.values):
            raise PreconditionError("grid and values must have equal length")
        if np.any(np.diff(self.x_grid) <= 0):
            raise PreconditionError("x_grid must be strictly ascending")


def sample_psi(step: PsiStep, x_grid: np.ndarray) -> PsiSeries:
    x_grid = np.asarray(x_grid, dtype=float)
    return PsiSeries(x_grid=x_grid, values=step.values_at(x_grid), source=step.descriptor, step=step)


def subtract_main_term(series: PsiSeries) -> PsiSeries:
    """Center the degree-1 series at its pole contribution: values - x."""
    return PsiSeries(
        x_grid=series.x_grid,
        values=series.values - series.x_grid,
        source=series.source + "-centered",
        step=series.step,
    )


def geometric_grid(x_min: float, x_max: float, ratio: float = 2.0 ** 0.25) -> np.ndarray:
    """Default scan grid: geometric with the given ratio, endpoint included."""
    if not (x_max >= x_min > 0) or ratio <= 1.0:
        raise PreconditionError("need x_max >= x_min > 0 and ratio > 1")
    if x_max == x_min:
        return np.asarray([float(x_max)])
    count = int(math.floor(math.log(x_max / x_min) / math.log(ratio))) + 1
    pts = x_min * ratio ** np.arange(count)
    if pts[-1] < x_max:
        pts = np.append(pts, x_max)
    else:
        pts[-1] = x_max
    return pts
