"""Desk-scale statistics of psi: scaled suprema, mean squares, record maxima,
and the short-interval variance, all integrated exactly over the step function."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import brentq

from ..errors import CapacityError, PreconditionError, WindowError
from .profile import RepresentationProfile, conductor
from .psi import PsiSeries, PsiStep


@dataclass(frozen=True)
class ScaledSupResult:
    sup: float
    argmax_x: float


def grh_scaled_sup(series: PsiSeries, profile: RepresentationProfile) -> ScaledSupResult:
    """sup over the grid of |psi(x)| / (x^(1/2) * log^2(Q*x)), with its argmax."""
    q0 = conductor(profile, 0.0)
    x = series.x_grid
    ratio = np.abs(series.values) / (np.sqrt(x) * np.log(q0 * x) ** 2)
    i = int(np.argmax(ratio))
    return ScaledSupResult(sup=float(ratio[i]), argmax_x=float(x[i]))


@dataclass(frozen=True)
class MeanSquareResult:
    statistic: float  # (1/X) * integral_2^X psi^2 dx/x
    integral: float
    reference: float  # X * log^2(Q), the comparison scale
    X: float


def mean_square(step: PsiStep, X: float, profile: RepresentationProfile) -> MeanSquareResult:
    """(1/X) int_2^X |psi(x)|^2 dx/x, summed exactly over the step segments."""
    if X <= 2:
        raise PreconditionError(f"X must exceed 2, got {X}")
    if X > step.capacity:
        raise CapacityError(f"X={X} exceeds capacity {step.capacity}")
    bp = step.breakpoints.astype(float)
    idx = int(np.searchsorted(bp, X, side="right"))
    edges = np.concatenate([bp[:idx], [X]])
    edges = np.maximum(edges, 2.0)
    vals = step.cumulative[:idx]
    integral = float(np.sum(vals**2 * np.log(edges[1:] / edges[:-1])))
    q0 = conductor(profile, 0.0)
    return MeanSquareResult(
        statistic=integral / X,
        integral=integral,
        reference=X * math.log(q0) ** 2,
        X=X,
    )


@dataclass(frozen=True, eq=False)
class OmegaResult:
    statistic: float
    argmax_x: float
    record_x: np.ndarray
    record_values: np.ndarray


def omega_statistic(series: PsiSeries, eps: float) -> OmegaResult:
    """max over the grid of |psi(x)| / x^(1/2 - eps), with the running-max trace.

    The record x's are the candidate sequence along which the scaled values
    refuse to decay.
    """
    if not 0.0 < eps < 0.5:
        raise PreconditionError(f"eps must lie in (0, 1/2), got {eps}")
    x = series.x_grid
    vals = np.abs(series.values) / x ** (0.5 - eps)
    running = np.maximum.accumulate(vals)
    is_record = vals >= running
    i = int(np.argmax(vals))
    return OmegaResult(
        statistic=float(vals[i]),
        argmax_x=float(x[i]),
        record_x=x[is_record],
        record_values=vals[is_record],
    )


@dataclass(frozen=True)
class ConstantWindow:
    h: float

    def __post_init__(self):
        if self.h <= 0:
            raise PreconditionError(f"window width must be positive, got {self.h}")

    def __call__(self, x):
        return self.h if np.isscalar(x) else np.full_like(np.asarray(x, dtype=float), self.h)

    def describe(self) -> str:
        return f"h={self.h:g}"


@dataclass(frozen=True)
class LogSquaredWindow:
    """h(x) = c * log^2(Q*x); increasing on x >= 1 since Q >= 3."""

    c: float
    profile: RepresentationProfile

    def __post_init__(self):
        if self.c <= 0:
            raise PreconditionError(f"window scale must be positive, got {self.c}")

    def __call__(self, x):
        q0 = conductor(self.profile, 0.0)
        return self.c * np.log(q0 * np.asarray(x, dtype=float)) ** 2

    def describe(self) -> str:
        return f"h=c*log^2(Q*x), c={self.c:g}"


Window = Union[ConstantWindow, LogSquaredWindow]


@dataclass(frozen=True)
class WindowedVarianceResult:
    value: float  # integral / (h(X)^2 * X)
    integral: float
    h_at_X: float
    X: float
    segments: int


def _difference_breakpoints(step: PsiStep, X: float, window: Window) -> np.ndarray:
    """All x in (1, X] where psi(x + h(x)) - psi(x) can jump."""
    h_X = float(window(X))
    bp = step.breakpoints.astype(float)
    pts = list(bp[(bp > 1.0) & (bp <= X)])
    upper = bp[(bp > 1.0) & (bp <= X + h_X)]
    if isinstance(window, ConstantWindow):
        shifted = upper - window.h
        pts.extend(shifted[(shifted > 1.0) & (shifted <= X)])
    else:
        for n in upper:
            # solve x + h(x) = n; the left edge n - h(n) is already below the root
            g = lambda x: x + float(window(x)) - n
            lo = max(1e-9, n - float(window(n)))
            if g(X) < 0:
                continue
            if g(lo) > 0:
                continue
            root = brentq(g, lo, min(n, X), xtol=1e-12, rtol=1e-14)
            if 1.0 < root <= X:
                pts.append(float(root))
    return np.asarray(sorted(set(pts)))


def windowed_variance(step: PsiStep, X: float, window: Window) -> WindowedVarianceResult:
    """V = int_1^X |psi(x + h(x)) - psi(x)|^2 dx / (h(X)^2 * X), exactly.

    The integrand is constant between difference breakpoints, so the integral
    is a finite sum of midpoint values times segment lengths.  The window is
    rejected when it no longer fits at the right endpoint (h(X) > X); the
    asymptotic hypothesis h(x) <= x pointwise is deliberately not enforced on
    the initial segment, where the difference is still well defined.
    """
    if X <= 1:
        raise PreconditionError(f"X must exceed 1, got {X}")
    h_X = float(window(X))
    if h_X > X:
        raise WindowError(f"window h(X)={h_X:.6g} exceeds X={X:.6g}")
    if X + h_X > step.capacity:
        raise CapacityError(
            f"need psi up to {X + h_X:.6g}, capacity {step.capacity}"
        )
    inner = _difference_breakpoints(step, X, window)
    edges = np.concatenate([[1.0], inner, [float(X)]])
    edges = np.unique(edges)
    mids = 0.5 * (edges[:-1] + edges[1:])
    h_mid = np.asarray(window(mids), dtype=float)
    diff = step.values_at(mids + h_mid) - step.values_at(mids)
    integral = float(np.sum(diff**2 * np.diff(edges)))
    return WindowedVarianceResult(
        value=integral / (h_X**2 * X),
        integral=integral,
        h_at_X=h_X,
        X=X,
        segments=len(mids),
    )
