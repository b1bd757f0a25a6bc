"""Smallest-prime-factor sieve and the functions built directly on it."""
from __future__ import annotations

import math

import numpy as np

from .errors import PreconditionError


def smallest_prime_factor_table(n_max: int) -> np.ndarray:
    """spf[n] = smallest prime factor of n for 2 <= n <= n_max (spf[0] = spf[1] = 0)."""
    if n_max < 2:
        raise PreconditionError(f"n_max must be >= 2, got {n_max}")
    spf = np.zeros(n_max + 1, dtype=np.int64)
    for i in range(2, int(math.isqrt(n_max)) + 1):
        if spf[i] == 0:
            block = spf[i * i :: i]
            block[block == 0] = i
    spf[2:][spf[2:] == 0] = np.nonzero(spf[2:] == 0)[0] + 2
    return spf


def primes_up_to(n_max: int, spf: np.ndarray | None = None) -> np.ndarray:
    spf = smallest_prime_factor_table(n_max) if spf is None else spf
    n = np.arange(2, n_max + 1)
    return n[spf[2 : n_max + 1] == n]


def factorize(n: int, spf: np.ndarray) -> list[tuple[int, int]]:
    """Prime factorization [(p, e), ...] using a precomputed spf table."""
    out = []
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def prime_power_split(n: int, spf: np.ndarray) -> tuple[int, int, int]:
    """(p, e, rest) with n = p^e * rest, p the smallest prime factor, (p, rest) = 1."""
    p = int(spf[n])
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return p, e, n


def von_mangoldt_table(n_max: int) -> np.ndarray:
    """Lambda(n) for 0 <= n <= n_max: log p at prime powers p^k, else 0."""
    if n_max < 2:
        raise PreconditionError(f"n_max must be >= 2, got {n_max}")
    spf = smallest_prime_factor_table(n_max)
    lam = np.zeros(n_max + 1)
    for p in primes_up_to(n_max, spf):
        logp = math.log(p)
        pk = int(p)
        while pk <= n_max:
            lam[pk] = logp
            pk *= int(p)
    return lam
