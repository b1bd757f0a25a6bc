"""Concrete real multiplicative coefficient series.

Two generators are provided: the discriminant cusp form of weight 12 and
level 1, expanded exactly from the 24th power of the eta-product, and a
generic extension from prime eigenvalues through the degree-2 local
recursion.  Exact integers carry the sign analysis; normalized values are
double precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

import gmpy2
import numpy as np

from .errors import DataFormatError, MissingPrimeError, PreconditionError
from .sieve import prime_power_split, primes_up_to, smallest_prime_factor_table


@dataclass(frozen=True)
class NewformSpec:
    weight: int
    level: int
    label: str
    generator: str  # one of {eta-delta, hecke-extend, file}

    def __post_init__(self):
        if self.weight < 2 or self.weight % 2 != 0:
            raise PreconditionError(f"weight must be an even integer >= 2, got {self.weight}")
        if self.level < 1:
            raise PreconditionError(f"level must be >= 1, got {self.level}")


@dataclass(frozen=True, eq=False)
class CoefficientSeries:
    """Real multiplicative lambda(n), 1 <= n <= n_max, 1-based arrays.

    `integer_values[n]`, when present, holds the exact integer
    lambda(n) * n^((weight-1)/2); sign decisions use it directly.
    """

    spec: NewformSpec
    n_max: int
    values: np.ndarray
    integer_values: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.n_max < 1:
            raise PreconditionError(f"n_max must be >= 1, got {self.n_max}")
        if len(self.values) != self.n_max + 1:
            raise PreconditionError("values must be a 1-based array of length n_max + 1")
        if abs(self.values[1] - 1.0) > 1e-12:
            raise PreconditionError(f"lambda(1) must be 1, got {self.values[1]!r}")
        if self.integer_values is not None and len(self.integer_values) != self.n_max + 1:
            raise PreconditionError("integer_values must match values in length")

    @property
    def exact(self) -> bool:
        return self.integer_values is not None

    def sign_of(self, n: int) -> int:
        """Sign of lambda(n): exact when integers are carried, tolerance 1e-12 otherwise."""
        if self.integer_values is not None:
            v = self.integer_values[n]
            return (v > 0) - (v < 0)
        v = self.values[n]
        if v > 1e-12:
            return 1
        if v < -1e-12:
            return -1
        return 0


# ---------------------------------------------------------------------------
# exact expansion of the weight-12 level-1 form


def pentagonal_series(deg: int) -> list[int]:
    """Coefficients of prod_{j>=1} (1 - q^j) up to q^deg: +-1 at the
    generalized pentagonal numbers k(3k-+1)/2, zero elsewhere."""
    c = [0] * (deg + 1)
    c[0] = 1
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > deg and g2 > deg:
            break
        s = 1 if k % 2 == 0 else -1
        if g1 <= deg:
            c[g1] = s
        if g2 <= deg:
            c[g2] = s
        k += 1
    return c


def eta_factor_product(deg: int) -> list[int]:
    """Same series by explicit factor-by-factor multiplication (the slow route)."""
    c = [0] * (deg + 1)
    c[0] = 1
    top = 0
    for j in range(1, deg + 1):
        top = min(deg, top + j)
        for i in range(top, j - 1, -1):
            c[i] -= c[i - j]
    return c


def _digit_bits(a: list[int], b: list[int], n_terms: int) -> int:
    """Digit width for Kronecker packing, from a sound product-coefficient bound.

    Every product coefficient satisfies |c_k| <= min(len) * max|a| * max|b|,
    so digits of this width never interfere.
    """
    max_a = max((abs(v) for v in a), default=0)
    max_b = max((abs(v) for v in b), default=0)
    bound = min(len(a), len(b)) * max(max_a, 1) * max(max_b, 1)
    bits = bound.bit_length() + 2
    return ((bits + 7) // 8) * 8


def _pack(coeffs: list[int], bits: int) -> gmpy2.mpz:
    width = bits // 8
    full = 1 << bits
    buf = bytearray(width * len(coeffs))
    carry = 0
    for i, c in enumerate(coeffs):
        d = c + carry
        carry = 0
        while d < 0:
            d += full
            carry -= 1
        buf[i * width : (i + 1) * width] = int(d).to_bytes(width, "little")
    v = gmpy2.mpz(int.from_bytes(bytes(buf), "little"))
    if carry:
        v += gmpy2.mpz(carry) << (bits * len(coeffs))
    return v


def _unpack(v: gmpy2.mpz, bits: int, n_terms: int) -> list[int]:
    width = bits // 8
    half = 1 << (bits - 1)
    full = 1 << bits
    neg = v < 0
    if neg:
        v = -v
    nbytes = max(width * n_terms, (int(v).bit_length() + 7) // 8) + width
    data = int(v).to_bytes(nbytes, "little")
    out = [0] * n_terms
    carry = 0
    for i in range(n_terms):
        d = int.from_bytes(data[i * width : (i + 1) * width], "little") + carry
        if d >= half:
            d -= full
            carry = 1
        else:
            carry = 0
        out[i] = -d if neg else d
    return out


def convolve_exact(a: list[int], b: list[int], deg: int) -> list[int]:
    """Exact integer polynomial product truncated at q^deg.

    Kronecker substitution: both polynomials are evaluated at 2^bits, the big
    integers are multiplied (GMP), and balanced base-2^bits digits of the
    product are the product coefficients.  The digit width comes from a
    rigorous coefficient bound, so decoding is exact.
    """
    bits = _digit_bits(a, b, deg + 1)
    return _unpack(_pack(a, bits) * _pack(b, bits), bits, deg + 1)


def convolve_schoolbook(a: list[int], b: list[int], deg: int) -> list[int]:
    out = [0] * (deg + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > deg:
            continue
        lim = deg - i
        for j, bj in enumerate(b[: lim + 1]):
            if bj:
                out[i + j] += ai * bj
    return out


def generate_delta(n_max: int, strategy: str = "pentagonal") -> CoefficientSeries:
    """The weight-12 level-1 eigenform: exact integer coefficients of
    q * prod_{j>=1} (1 - q^j)^24, normalized by n^(11/2).

    `strategy="pentagonal"` expands the eta-product by the pentagonal-number
    theorem and squares with exact Kronecker-packed convolutions;
    `strategy="naive"` multiplies the factors out one by one and convolves
    schoolbook-style, as an independent cross-check route.  Python integers
    are unbounded, so there is no overflow point to guard; coefficient growth
    (~n^(11/2)) only costs time and memory.
    """
    if n_max < 1:
        raise PreconditionError(f"n_max must be >= 1, got {n_max}")
    deg = n_max - 1
    if strategy == "pentagonal":
        base = pentagonal_series(deg)
        conv = convolve_exact
    elif strategy == "naive":
        base = eta_factor_product(deg)
        conv = convolve_schoolbook
    else:
        raise PreconditionError(f"unknown strategy {strategy!r}")
    e2 = conv(base, base, deg)
    e4 = conv(e2, e2, deg)
    e8 = conv(e4, e4, deg)
    e16 = conv(e8, e8, deg)
    e24 = conv(e16, e8, deg)
    tau = [0] + e24[:n_max]
    values = np.zeros(n_max + 1)
    for n in range(1, n_max + 1):
        values[n] = tau[n] / n**5.5
    spec = NewformSpec(weight=12, level=1, label="delta", generator="eta-delta")
    return CoefficientSeries(spec=spec, n_max=n_max, values=values, integer_values=tuple(tau))


# ---------------------------------------------------------------------------
# generic multiplicative extension


def principal_character(p: int, level: int) -> int:
    """chi at p for the principal character mod level: 1 if p does not divide it."""
    return 0 if level % p == 0 else 1


def extend_multiplicatively(
    prime_lambdas: Mapping[int, float],
    level: int,
    n_max: int,
    weight: int = 2,
    label: str = "hecke-extend",
) -> CoefficientSeries:
    """Fill lambda(n) for n <= n_max from prime eigenvalues.

    Prime powers follow lambda(p^(j+1)) = lambda(p)*lambda(p^j) -
    chi(p)*lambda(p^(j-1)); composites factor over coprime parts.
    """
    if n_max < 1:
        raise PreconditionError(f"n_max must be >= 1, got {n_max}")
    values = np.zeros(n_max + 1)
    values[1] = 1.0
    if n_max == 1:
        return CoefficientSeries(
            spec=NewformSpec(weight, level, label, "hecke-extend"),
            n_max=1,
            values=values,
        )
    spf = smallest_prime_factor_table(n_max)
    for p in primes_up_to(n_max, spf):
        p = int(p)
        if p not in prime_lambdas:
            raise MissingPrimeError(p)
        lp = float(prime_lambdas[p])
        chi = principal_character(p, level)
        prev2, prev = 1.0, lp
        pk = p
        while pk <= n_max:
            values[pk] = prev
            if pk > n_max // p:
                break
            prev2, prev = prev, lp * prev - chi * prev2
            pk *= p
    for n in range(2, n_max + 1):
        p, e, rest = prime_power_split(n, spf)
        if rest > 1:
            values[n] = values[p**e] * values[rest]
    return CoefficientSeries(
        spec=NewformSpec(weight, level, label, "hecke-extend"),
        n_max=n_max,
        values=values,
    )


def prime_values(series: CoefficientSeries) -> dict[int, float]:
    """lambda(p) for every prime p <= n_max, e.g. for re-seeding the extension."""
    spf = smallest_prime_factor_table(series.n_max) if series.n_max >= 2 else None
    if spf is None:
        return {}
    return {int(p): float(series.values[p]) for p in primes_up_to(series.n_max, spf)}


# ---------------------------------------------------------------------------
# verification reports


@dataclass
class HeckeReport:
    pairs_checked: int
    max_residual: float
    worst_pair: tuple[int, int]
    failures: list[tuple[int, int, float]]
    tol: float

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_hecke_relations(
    series: CoefficientSeries, trials: int, seed: int = 0, tol: float = 1e-10
) -> HeckeReport:
    """Sampled check of lambda(m)lambda(n) = sum_{d | (m,n)} lambda(m*n/d^2).

    Pairs are drawn with m*n <= n_max and (n, level) = 1, which is the domain
    where the divisor-sum form holds with no character factor; non-coprime
    pairs occur naturally and exercise the full sum.
    """
    if series.n_max < 2:
        raise PreconditionError("series too short to sample pairs")
    rng = np.random.default_rng(seed)
    level = series.spec.level
    lam = series.values
    max_res = 0.0
    worst = (1, 1)
    failures: list[tuple[int, int, float]] = []
    checked = 0
    while checked < trials:
        m = int(rng.integers(1, series.n_max + 1))
        n_hi = series.n_max // m
        if n_hi < 1:
            continue
        n = int(rng.integers(1, n_hi + 1))
        if math.gcd(n, level) != 1:
            continue
        g = math.gcd(m, n)
        total = 0.0
        for d in range(1, g + 1):
            if g % d == 0:
                total += lam[(m * n) // (d * d)]
        res = abs(lam[m] * lam[n] - total)
        if res > max_res:
            max_res, worst = res, (m, n)
        if res > tol:
            failures.append((m, n, res))
        checked += 1
    return HeckeReport(checked, max_res, worst, failures, tol)


@dataclass
class DeligneReport:
    max_abs: float
    at_prime: int
    bound: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_abs <= self.bound + self.tol


def verify_deligne(series: CoefficientSeries, tol: float = 1e-10) -> DeligneReport:
    """max over primes p coprime to the level of |lambda(p)|, against the bound 2."""
    if series.n_max < 2:
        raise PreconditionError("series too short to contain a prime")
    spf = smallest_prime_factor_table(series.n_max)
    worst, at_p = 0.0, 2
    for p in primes_up_to(series.n_max, spf):
        if series.spec.level % int(p) == 0:
            continue
        v = abs(float(series.values[p]))
        if v > worst:
            worst, at_p = v, int(p)
    return DeligneReport(worst, at_p, 2.0, tol)
