"""Numerical inversion of a truncated Dirichlet series along a vertical line.

The integral (1/2*pi*i) int_{b-iT}^{b+iT} F(s) x^s / s^(l+1) ds recovers the
factorial-normalized weighted sum sum_{n <= x} a_n log^l(x/n) / l! as T grows
(the printed kernel identity is adopted with the l! present; for l in {0, 1}
both readings coincide).  F is the finite Dirichlet sum over the supplied
coefficients, the integrand pairs t with -t into twice its real part, and the
segment is covered by equal Gauss-Legendre panels sized to the fastest
oscillation exp(i*t*log(x/n)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import PreconditionError, QuadratureError

_GL_ORDER = 16
_RADIANS_PER_PANEL = 4.0
_CHUNK = 512


@dataclass(frozen=True)
class PerronResult:
    value: float
    error_estimate: float
    panels: int
    x: float
    b: float
    T: float
    ell: int


def weighted_dirichlet_sum(coeffs: Sequence[float], x: float, ell: int) -> float:
    """Direct evaluation of sum_{n <= x} a_n log^l(x/n) / l! (1-based coeffs)."""
    total = 0.0
    top = min(len(coeffs) - 1, int(math.floor(x)))
    for n in range(1, top + 1):
        a = coeffs[n]
        if a:
            total += a * math.log(x / n) ** ell
    return total / math.factorial(ell)


def _vertical_integral(
    an: np.ndarray, logn: np.ndarray, x: float, b: float, T: float, ell: int, panels: int
) -> float:
    """2 * int_0^T Re[F(b+it) x^(b+it) / (b+it)^(l+1)] dt / (2 pi)."""
    nodes, weights = np.polynomial.legendre.leggauss(_GL_ORDER)
    width = T / panels
    offsets = 0.5 * width * (nodes + 1.0)
    coef = an * np.exp(-b * logn)
    # phases split as exp(-i t logn) = exp(-i edge logn) * exp(-i offset logn):
    # the offset factor is shared by every panel, so it is built once.
    m2 = coef[None, :] * np.exp(-1j * np.outer(offsets, logn))  # (order, N)
    logx = math.log(x)
    xb = x**b
    total = 0.0
    edges = width * np.arange(panels)
    for lo in range(0, panels, _CHUNK):
        e = edges[lo : lo + _CHUNK]
        m1 = np.exp(-1j * np.outer(e, logn))  # (chunk, N)
        F = m1 @ m2.T  # (chunk, order)
        t = e[:, None] + offsets[None, :]
        kernel = xb * np.exp(1j * t * logx) / (b + 1j * t) ** (ell + 1)
        g = (F * kernel).real
        total += float((g @ weights).sum()) * 0.5 * width
    return total / math.pi


def perron_truncated(
    coeffs: Sequence[float],
    x: float,
    b: float,
    T: float,
    ell: int,
    tol: float = 1e-6,
) -> PerronResult:
    """Adaptive-resolution quadrature of the truncated inversion integral.

    The error estimate compares the result against a run with doubled panel
    count; exceeding `tol` raises QuadratureError.  `x` must stay away from
    integers (the inversion identity picks up a boundary term there).
    """
    if x < 1.0:
        raise PreconditionError(f"x must be >= 1, got {x}")
    if abs(x - round(x)) < 1e-9:
        raise PreconditionError(f"x={x} is too close to an integer; use a half-integer")
    if b <= 0:
        raise PreconditionError(f"b must be positive, got {b}")
    if T < 2:
        raise PreconditionError(f"T must be >= 2, got {T}")
    if ell < 0:
        raise PreconditionError(f"ell must be >= 0, got {ell}")
    arr = np.asarray(coeffs[1:], dtype=float)
    n = np.arange(1, len(arr) + 1)
    mask = arr != 0.0
    if not mask.any():
        return PerronResult(0.0, 0.0, 0, x, b, T, ell)
    an = arr[mask]
    logn = np.log(n[mask].astype(float))
    n_hi = int(n[mask].max())
    rate = max(math.log(x), abs(math.log(max(n_hi, 2) / x)), 1.0)
    panels = max(16, int(math.ceil(T * rate / _RADIANS_PER_PANEL)))
    coarse = _vertical_integral(an, logn, x, b, T, ell, panels)
    fine = _vertical_integral(an, logn, x, b, T, ell, 2 * panels)
    err = abs(fine - coarse)
    if err > tol:
        raise QuadratureError(
            f"quadrature error estimate {err:.3e} exceeds tolerance {tol:.1e}"
        )
    return PerronResult(fine, err, 2 * panels, x, b, T, ell)
