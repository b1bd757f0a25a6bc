"""Local algebra on Satake parameters.

Everything here operates on the m complex local parameters attached to one
prime: power sums, complete homogeneous sums (the local Dirichlet
coefficients), self-convolution (Rankin-Selberg) coefficients, and the
combinatorial lower bounds that hold for determinant-one unimodular data.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ConsistencyError, PreconditionError

IDENTITY_TOL = 1e-10
ROUNDTRIP_TOL = 1e-12


@dataclass(frozen=True)
class SatakeLocalData:
    """The m local parameters at a single prime.

    Zero entries are allowed (ramified places enter as zero-padded data) but
    are excluded from the unimodularity check.
    """

    p: int
    alphas: tuple[complex, ...]
    unramified: bool = True
    unimodular: bool = False
    tol: float = IDENTITY_TOL

    def __post_init__(self):
        if self.p < 2:
            raise PreconditionError(f"p must be a prime >= 2, got {self.p}")
        if len(self.alphas) < 1:
            raise PreconditionError("at least one local parameter required")
        object.__setattr__(self, "alphas", tuple(complex(a) for a in self.alphas))
        if self.unramified:
            bound = math.sqrt(self.p) + self.tol
            for a in self.alphas:
                if abs(a) > bound:
                    raise PreconditionError(
                        f"|alpha|={abs(a):.6g} exceeds p^(1/2)={math.sqrt(self.p):.6g} at p={self.p}"
                    )
        if self.unimodular:
            for a in self.alphas:
                if a != 0 and abs(abs(a) - 1.0) > self.tol:
                    raise PreconditionError(
                        f"unimodular marker set but |alpha|={abs(a):.12g} != 1"
                    )

    @property
    def m(self) -> int:
        return len(self.alphas)

    def det(self) -> complex:
        prod = complex(1.0)
        for a in self.alphas:
            prod *= a
        return prod


def power_sums(params: SatakeLocalData, K: int) -> list[complex]:
    """Power sums a(p^k) = sum_j alpha_j^k for k = 1..K."""
    if K < 1:
        raise PreconditionError(f"K must be >= 1, got {K}")
    out = []
    powers = list(params.alphas)
    for _ in range(K):
        out.append(sum(powers))
        powers = [q * a for q, a in zip(powers, params.alphas)]
    return out


def homogeneous_sums(params: SatakeLocalData, K: int) -> list[complex]:
    """Local Dirichlet coefficients lambda(p^k), k = 0..K, by the power-sum recursion.

    n*l_n = a_1*l_{n-1} + a_2*l_{n-2} + ... + a_n, with l_0 = 1.
    """
    if K < 0:
        raise PreconditionError(f"K must be >= 0, got {K}")
    if K == 0:
        return [complex(1.0)]
    a = power_sums(params, K)
    ell = [complex(1.0)]
    for n in range(1, K + 1):
        s = sum(a[u - 1] * ell[n - u] for u in range(1, n + 1))
        ell.append(s / n)
    return ell


def newton_residuals(lambdas: Sequence[complex], powsums: Sequence[complex]) -> list[float]:
    """Magnitude-normalized residuals of the power-sum recursion for n = 1..K.

    Raw residuals grow with the size of the participating terms, so they are
    scaled by max(1, sum of term magnitudes); a logic fault still shows up at
    O(1) while roundoff stays near machine epsilon.
    """
    out = []
    for n in range(1, len(lambdas)):
        s = complex(0.0)
        scale = float(n * abs(lambdas[n]))
        for u in range(1, n + 1):
            t = powsums[u - 1] * lambdas[n - u]
            s += t
            scale += abs(t)
        out.append(abs(n * lambdas[n] - s) / max(1.0, scale))
    return out


@dataclass(frozen=True)
class LocalCoefficientTable:
    """lambda(p^n) for n = 0..K together with the power sums a(p^n), n = 1..K."""

    source: SatakeLocalData
    depth: int
    lambdas: tuple[complex, ...]
    powsums: tuple[complex, ...]

    def __post_init__(self):
        if abs(self.lambdas[0] - 1.0) > self.source.tol:
            raise ConsistencyError("lambda(p^0) must equal 1")
        worst = max(newton_residuals(self.lambdas, self.powsums), default=0.0)
        if worst > self.source.tol:
            raise ConsistencyError(
                f"power-sum recursion residual {worst:.3e} exceeds tol {self.source.tol:.1e}"
            )


def local_table(params: SatakeLocalData, K: int) -> LocalCoefficientTable:
    """Build the joint lambda/power-sum table of depth K at one prime."""
    if K < 1:
        raise PreconditionError(f"K must be >= 1, got {K}")
    return LocalCoefficientTable(
        source=params,
        depth=K,
        lambdas=tuple(homogeneous_sums(params, K)),
        powsums=tuple(power_sums(params, K)),
    )


def rankin_selberg_betas(params: SatakeLocalData) -> tuple[complex, ...]:
    """The M = m^2 products alpha_j * conj(alpha_j')."""
    return tuple(a * b.conjugate() for a in params.alphas for b in params.alphas)


@dataclass(frozen=True)
class RankinSelbergLocalTable:
    """Self-convolution local coefficients; real and nonnegative for unimodular data."""

    source: SatakeLocalData
    betas: tuple[complex, ...]
    depth: int
    lambda_rs: tuple[float, ...]
    powsum_rs: tuple[float, ...]


def rankin_selberg_table(
    params: SatakeLocalData, K: int, tol: float = IDENTITY_TOL
) -> RankinSelbergLocalTable:
    """Self-convolution coefficients lambda(p^n) for n = 0..K, computed two ways.

    Route one runs the power-sum recursion over the m^2 products
    alpha_j*conj(alpha_j'); route two runs the same recursion driven by the
    squared magnitudes |a(p^u)|^2 of the single-factor power sums.  The two
    must agree and the values must be real; disagreement signals a fault
    rather than an input problem.
    """
    if K < 1:
        raise PreconditionError(f"K must be >= 1, got {K}")
    betas = rankin_selberg_betas(params)
    beta_data = SatakeLocalData(
        p=params.p, alphas=betas, unramified=False, tol=params.tol
    )
    route_one = homogeneous_sums(beta_data, K)

    a = power_sums(params, K)
    sq = [abs(v) ** 2 for v in a]
    route_two = [1.0]
    for n in range(1, K + 1):
        s = sum(sq[u - 1] * route_two[n - u] for u in range(1, n + 1))
        route_two.append(s / n)

    scale = max(1.0, max(abs(v) for v in route_one), max(route_two))
    for n in range(K + 1):
        if abs(route_one[n] - route_two[n]) > tol * scale:
            raise ConsistencyError(
                f"self-convolution routes disagree at n={n}: "
                f"{route_one[n]:.15g} vs {route_two[n]:.15g}"
            )
        if abs(route_one[n].imag) > tol * scale:
            raise ConsistencyError(
                f"self-convolution coefficient at n={n} is not real: {route_one[n]:.15g}"
            )
    return RankinSelbergLocalTable(
        source=params,
        betas=betas,
        depth=K,
        lambda_rs=tuple(v.real for v in route_one),
        powsum_rs=tuple(sq),
    )


def _require_det_one(params: SatakeLocalData, tol: float) -> None:
    d = params.det()
    if abs(d - 1.0) > tol:
        raise PreconditionError(
            f"parameters must have product 1 (got {d:.12g}); "
            "the lower bounds are only asserted under that normalization"
        )
    if not params.unramified:
        raise PreconditionError("lower bounds require unramified local data")


def brumley_check(
    params: SatakeLocalData, tol: float = IDENTITY_TOL
) -> tuple[float, bool]:
    """Value of the m-th self-convolution coefficient and whether it is >= 1.

    Requires product-one normalization: the bound b_m >= 1 for the
    coefficients of prod (1 - a_j*conj(a_j')X)^{-1} holds when
    alpha_1*...*alpha_m = 1.
    """
    _require_det_one(params, tol)
    table = rankin_selberg_table(params, params.m, tol=tol)
    value = table.lambda_rs[params.m]
    return value, value >= 1.0 - tol


def lambda_sum_lower_bound(
    params: SatakeLocalData, tol: float = IDENTITY_TOL
) -> tuple[float, bool]:
    """sum_{j=1..m} |lambda(p^j)| and whether it clears the 1/m floor."""
    _require_det_one(params, tol)
    ell = homogeneous_sums(params, params.m)
    total = sum(abs(v) for v in ell[1:])
    return total, total >= 1.0 / params.m - tol


def power_sum_unit_index(
    params: SatakeLocalData, tol: float = IDENTITY_TOL
) -> Optional[int]:
    """Smallest j <= m with |a(p^j)| >= 1, or None.

    For such data an index always exists; a None return is a counterexample
    finding and is treated as a failure by the sweeps.  Since every |a(p^j)|
    is invariant under a global phase rotation of the parameters, the
    product-one normalization is only required up to rotation: |prod| = 1.
    """
    d = params.det()
    if abs(abs(d) - 1.0) > tol:
        raise PreconditionError(
            f"parameters must have unit-modulus product (got |{d:.12g}| = {abs(d):.12g})"
        )
    if not params.unramified:
        raise PreconditionError("the index bound requires unramified local data")
    for j, v in enumerate(power_sums(params, params.m), start=1):
        if abs(v) >= 1.0 - tol:
            return j
    return None


def satake_from_hecke(lambda_p: float, chi_p: int, p: int) -> SatakeLocalData:
    """Degree-2 local parameters from a Hecke eigenvalue.

    alpha, beta are the roots of X^2 - lambda_p*X + chi_p.  With chi_p = 1 and
    |lambda_p| <= 2 the pair is a conjugate unit-circle pair; chi_p = 0 marks
    a ramified place with alpha = lambda_p, beta = 0.
    """
    if chi_p not in (0, 1):
        raise PreconditionError(f"chi_p must be 0 or 1, got {chi_p}")
    if chi_p == 0:
        return SatakeLocalData(p=p, alphas=(complex(lambda_p), 0j), unramified=False)
    disc = cmath.sqrt(complex(lambda_p) ** 2 - 4.0)
    alpha = (lambda_p + disc) / 2.0
    beta = (lambda_p - disc) / 2.0
    return SatakeLocalData(
        p=p,
        alphas=(alpha, beta),
        unramified=True,
        unimodular=abs(lambda_p) <= 2.0,
    )


def random_unimodular_det_one(
    m: int, rng: np.random.Generator, p: int = 2
) -> SatakeLocalData:
    """One random draw of m unimodular parameters with product forced to 1."""
    thetas = rng.uniform(0.0, 2.0 * math.pi, size=m - 1)
    alphas = [cmath.exp(1j * t) for t in thetas]
    prod = complex(1.0)
    for a in alphas:
        prod *= a
    alphas.append(1.0 / prod)
    return SatakeLocalData(p=p, alphas=tuple(alphas), unramified=True, unimodular=True)
