"""Randomized verification sweeps over the local algebra.

Each sweep vectorizes its trials with numpy, draws from an explicitly seeded
generator, and reports the worst offender so a failure can be reproduced
verbatim.  Residuals are magnitude-normalized: raw residuals of the
recursions scale with the size of the participating terms (up to ~1e7 at
|alpha| = 2, depth 20), so a fixed absolute tolerance would measure roundoff,
not logic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .oracles import geometric_product_series_batch

DEFAULT_TOL = 1e-10


@dataclass
class SweepReport:
    suite: str
    trials: int
    seed: int
    tol: float
    worst_residual: float
    passed: bool
    failures: list[dict] = field(default_factory=list)

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (
            f"{self.suite}: {status} over {self.trials} trials "
            f"(worst residual {self.worst_residual:.3e}, tol {self.tol:.1e}, seed {self.seed})"
        )


def _record_failures(report: SweepReport, alphas: np.ndarray, bad: np.ndarray, values):
    for idx in np.nonzero(bad)[0][:10]:
        report.failures.append(
            {"alphas": [complex(a) for a in alphas[idx]], "value": float(values[idx])}
        )
    if report.failures:
        report.passed = False


def _newton_batch(alphas: np.ndarray, K: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized power sums and homogeneous sums (the main double path)."""
    trials, m = alphas.shape
    a = np.empty((trials, K + 1), dtype=np.complex128)
    a[:, 0] = m
    powers = alphas.copy()
    for k in range(1, K + 1):
        a[:, k] = powers.sum(axis=1)
        powers *= alphas
    ell = np.zeros((trials, K + 1), dtype=np.complex128)
    ell[:, 0] = 1.0
    for n in range(1, K + 1):
        s = np.zeros(trials, dtype=np.complex128)
        for u in range(1, n + 1):
            s += a[:, u] * ell[:, n - u]
        ell[:, n] = s / n
    return a, ell


def draw_bounded(trials: int, m: int, rng: np.random.Generator, amp: float = 2.0) -> np.ndarray:
    r = rng.uniform(0.0, amp, size=(trials, m))
    th = rng.uniform(0.0, 2.0 * np.pi, size=(trials, m))
    return r * np.exp(1j * th)


def draw_det_one(trials: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """Unimodular parameters with the last one solved to force product 1."""
    th = rng.uniform(0.0, 2.0 * np.pi, size=(trials, m - 1))
    alphas = np.exp(1j * th)
    last = 1.0 / alphas.prod(axis=1)
    return np.concatenate([alphas, last[:, None]], axis=1)


def newton_sweep(
    trials: int = 10000,
    seed: int = 0,
    m_max: int = 6,
    k_max: int = 20,
    tol: float = DEFAULT_TOL,
) -> SweepReport:
    """Power-sum recursion vs the extended-precision series-product oracle.

    Trials are split across degrees 1..m_max at depth k_max with |alpha| <= 2;
    both the recursion identity residual and the disagreement against the
    oracle are normalized by the magnitude of the participating terms.
    """
    rng = np.random.default_rng(seed)
    report = SweepReport("newton", trials, seed, tol, 0.0, True)
    per_m = max(1, trials // m_max)
    for m in range(1, m_max + 1):
        n_t = per_m if m < m_max else trials - per_m * (m_max - 1)
        alphas = draw_bounded(n_t, m, rng)
        a, ell = _newton_batch(alphas, k_max)
        oracle = geometric_product_series_batch(alphas, k_max).astype(np.complex128)

        # identity residual, normalized
        worst = np.zeros(n_t)
        for n in range(1, k_max + 1):
            s = np.zeros(n_t, dtype=np.complex128)
            scale = n * np.abs(ell[:, n])
            for u in range(1, n + 1):
                t = a[:, u] * ell[:, n - u]
                s += t
                scale = scale + np.abs(t)
            res = np.abs(n * ell[:, n] - s) / np.maximum(1.0, scale)
            worst = np.maximum(worst, res)
        # route disagreement vs oracle, normalized
        dis = np.abs(ell - oracle) / np.maximum(1.0, np.abs(oracle))
        worst = np.maximum(worst, dis.max(axis=1))

        report.worst_residual = max(report.worst_residual, float(worst.max()))
        _record_failures(report, alphas, worst > tol, worst)
    return report


def _det_one_tables(trials: int, m: int, rng: np.random.Generator, depth: int):
    alphas = draw_det_one(trials, m, rng)
    M = m * m
    betas = (alphas[:, :, None] * alphas[:, None, :].conj()).reshape(trials, M)
    _, lam_rs = _newton_batch(betas, depth)
    a_deep, _ = _newton_batch(alphas, depth)
    a, lam = _newton_batch(alphas, m)
    # second route for the self-convolution: recursion driven by |a(p^u)|^2
    sq = np.abs(a_deep[:, 1:]) ** 2
    rs2 = np.zeros((trials, depth + 1))
    rs2[:, 0] = 1.0
    for n in range(1, depth + 1):
        s = np.zeros(trials)
        for u in range(1, n + 1):
            s += sq[:, u - 1] * rs2[:, n - u]
        rs2[:, n] = s / n
    return alphas, betas, lam_rs, rs2, lam, a


def rs_sweep(
    m: int, trials: int = 10000, seed: int = 0, tol: float = DEFAULT_TOL, depth: Optional[int] = None
) -> SweepReport:
    """Self-convolution nonnegativity, realness, and two-route agreement."""
    depth = depth or 2 * m
    rng = np.random.default_rng(seed)
    alphas, betas, lam_rs, rs2, _, _ = _det_one_tables(trials, m, rng, depth)
    report = SweepReport(f"rs(m={m})", trials, seed, tol, 0.0, True)

    imag = np.abs(lam_rs.imag).max(axis=1)
    neg = np.maximum(0.0, -(lam_rs.real.min(axis=1)))
    dis = (np.abs(lam_rs.real - rs2) / np.maximum(1.0, np.abs(rs2))).max(axis=1)
    worst = np.maximum(np.maximum(imag, neg), dis)
    report.worst_residual = float(worst.max())
    _record_failures(report, alphas, worst > tol, worst)
    return report


def brumley_sweep(
    m: int, trials: int = 10000, seed: int = 0, tol: float = DEFAULT_TOL
) -> SweepReport:
    """lambda_RS(p^m) >= 1 on every determinant-one unimodular draw."""
    rng = np.random.default_rng(seed)
    alphas, _, lam_rs, _, _, _ = _det_one_tables(trials, m, rng, m)
    report = SweepReport(f"brumley(m={m})", trials, seed, tol, 0.0, True)
    deficit = 1.0 - lam_rs[:, m].real
    report.worst_residual = float(deficit.max())
    _record_failures(report, alphas, deficit > tol, lam_rs[:, m].real)
    return report


def lambda_sum_sweep(
    m: int, trials: int = 10000, seed: int = 0, tol: float = DEFAULT_TOL
) -> SweepReport:
    """sum_{j<=m} |lambda(p^j)| >= 1/m on every determinant-one draw."""
    rng = np.random.default_rng(seed)
    alphas = draw_det_one(trials, m, rng)
    _, lam = _newton_batch(alphas, m)
    sums = np.abs(lam[:, 1:]).sum(axis=1)
    report = SweepReport(f"l412(m={m})", trials, seed, tol, 0.0, True)
    deficit = 1.0 / m - sums
    report.worst_residual = float(deficit.max())
    _record_failures(report, alphas, deficit > tol, sums)
    return report


def unit_index_sweep(
    m: int, trials: int = 10000, seed: int = 0, tol: float = DEFAULT_TOL
) -> SweepReport:
    """Some j <= m has |a(p^j)| >= 1 on every determinant-one draw."""
    rng = np.random.default_rng(seed)
    alphas = draw_det_one(trials, m, rng)
    a, _ = _newton_batch(alphas, m)
    best = np.abs(a[:, 1:]).max(axis=1)
    report = SweepReport(f"claimc(m={m})", trials, seed, tol, 0.0, True)
    deficit = 1.0 - best
    report.worst_residual = float(np.maximum(0.0, deficit).max())
    _record_failures(report, alphas, deficit > tol, best)
    return report
