"""Independent reference computations for the local algebra.

These deliberately avoid the recursions used on the main path: coefficients
come from multiplying out truncated geometric series, and the arithmetic runs
in extended precision (clongdouble) so that a disagreement localizes a logic
fault rather than roundoff.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np


def power_sums_extended(alphas: Sequence[complex], K: int) -> np.ndarray:
    """a(p^k), k = 1..K, by direct summation in extended precision."""
    a = np.asarray(alphas, dtype=np.clongdouble)
    out = np.empty(K, dtype=np.clongdouble)
    powers = a.copy()
    for k in range(K):
        out[k] = powers.sum()
        powers *= a
    return out


def geometric_product_series(alphas: Sequence[complex], K: int) -> np.ndarray:
    """Coefficients of prod_j (1 - alpha_j X)^{-1} up to X^K, in extended precision.

    Each factor is applied as the prefix recurrence c[k] += alpha * c[k-1],
    i.e. multiplication by a truncated geometric series.
    """
    c = np.zeros(K + 1, dtype=np.clongdouble)
    c[0] = 1.0
    for a in np.asarray(alphas, dtype=np.clongdouble):
        for k in range(1, K + 1):
            c[k] += a * c[k - 1]
    return c


def geometric_product_series_batch(alphas: np.ndarray, K: int) -> np.ndarray:
    """Batched geometric_product_series: alphas has shape (trials, m)."""
    trials, m = alphas.shape
    c = np.zeros((trials, K + 1), dtype=np.clongdouble)
    c[:, 0] = 1.0
    a = alphas.astype(np.clongdouble)
    for j in range(m):
        for k in range(1, K + 1):
            c[:, k] += a[:, j] * c[:, k - 1]
    return c
