import math

import numpy as np
import pytest

from lfunlab.coefficients import (
    convolve_exact,
    convolve_schoolbook,
    extend_multiplicatively,
    generate_delta,
    prime_values,
    verify_deligne,
    verify_hecke_relations,
    CoefficientSeries,
    NewformSpec,
)
from lfunlab.errors import MissingPrimeError, PreconditionError

# first values of the integer coefficients of q * prod (1-q^j)^24, frozen from
# the schoolbook expansion route
TAU_KNOWN = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944]


class TestKroneckerConvolution:
    def test_matches_schoolbook_on_random_signed_polys(self):
        rng = np.random.default_rng(0)
        for _ in range(30):
            deg = int(rng.integers(1, 60))
            a = [int(v) for v in rng.integers(-(10**9), 10**9, size=deg + 1)]
            b = [int(v) for v in rng.integers(-(10**9), 10**9, size=deg + 1)]
            assert convolve_exact(a, b, deg) == convolve_schoolbook(a, b, deg)

    def test_huge_coefficients(self):
        a = [123456789123456789123456789, -987654321987654321, 1]
        assert convolve_exact(a, a, 2) == convolve_schoolbook(a, a, 2)


class TestGenerateDelta:
    def test_known_values(self, delta_1k):
        assert list(delta_1k.integer_values[1:13]) == TAU_KNOWN

    def test_normalization(self, delta_1k):
        assert delta_1k.values[1] == 1.0
        assert delta_1k.values[2] == pytest.approx(-24 / 2**5.5)

    def test_multiplicative_at_six(self, delta_1k):
        t = delta_1k.integer_values
        assert t[6] == t[2] * t[3]
        assert t[10] == t[2] * t[5]

    def test_hecke_square_relation(self, delta_1k):
        lam = delta_1k.values
        assert lam[2] ** 2 == pytest.approx(lam[4] + 1.0, abs=1e-12)

    def test_strategies_agree_exactly(self):
        fast = generate_delta(300, strategy="pentagonal")
        slow = generate_delta(300, strategy="naive")
        assert fast.integer_values == slow.integer_values

    def test_bad_strategy(self):
        with pytest.raises(PreconditionError):
            generate_delta(10, strategy="magic")

    def test_n_max_one(self):
        s = generate_delta(1)
        assert s.integer_values == (0, 1)


class TestExtendMultiplicatively:
    def test_chebyshev_pattern(self):
        primes = {p: 0.0 for p in (2, 3, 5, 7, 11, 13)}
        s = extend_multiplicatively(primes, level=1, n_max=16)
        assert s.values[2] == 0.0
        assert s.values[4] == -1.0
        assert s.values[8] == 0.0
        assert s.values[16] == 1.0

    def test_all_twos_has_no_sign_change(self):
        primes = {p: 2.0 for p in (2, 3, 5, 7, 11, 13, 17, 19)}
        s = extend_multiplicatively(primes, level=1, n_max=20)
        for k in range(1, 5):
            assert s.values[2**k] == pytest.approx(k + 1)
        assert (s.values[1:] > 0).all()

    def test_reproduces_delta(self, delta_10k):
        s = extend_multiplicatively(prime_values(delta_10k), level=1, n_max=10_000, weight=12)
        assert np.max(np.abs(s.values[1:] - delta_10k.values[1:])) < 1e-10

    def test_reseeding_is_idempotent(self):
        primes = {2: -0.5, 3: 1.25, 5: 0.0, 7: -1.75}
        s1 = extend_multiplicatively(primes, level=1, n_max=10)
        s2 = extend_multiplicatively(prime_values(s1), level=1, n_max=10)
        assert np.array_equal(s1.values, s2.values)

    def test_level_kills_character(self):
        s = extend_multiplicatively({2: 1.0, 3: 1.0, 5: 1.0, 7: 1.0}, level=2, n_max=8)
        # at p | N the recursion has no chi term: lambda(4) = lambda(2)^2
        assert s.values[4] == pytest.approx(s.values[2] ** 2)

    def test_missing_prime(self):
        with pytest.raises(MissingPrimeError) as err:
            extend_multiplicatively({2: 1.0}, level=1, n_max=10)
        assert err.value.prime == 3


class TestHeckeVerification:
    def test_delta_clean(self, delta_10k):
        rep = verify_hecke_relations(delta_10k, trials=400, seed=3)
        assert rep.passed
        assert rep.max_residual <= 1e-10

    def test_specific_pairs(self, delta_1k):
        lam = delta_1k.values
        assert lam[2] * lam[3] == pytest.approx(lam[6], abs=1e-12)
        assert lam[2] * lam[2] == pytest.approx(lam[4] + lam[1], abs=1e-12)

    def test_identity_pair(self, delta_1k):
        lam = delta_1k.values
        for n in (1, 17, 360):
            assert lam[1] * lam[n] == lam[n]

    def test_broken_series_is_flagged(self):
        values = np.ones(51)
        values[6] = 5.0  # breaks lambda(2)lambda(3) = lambda(6)
        s = CoefficientSeries(
            spec=NewformSpec(2, 1, "broken", "file"), n_max=50, values=values
        )
        rep = verify_hecke_relations(s, trials=500, seed=1)
        assert not rep.passed


class TestDeligneVerification:
    def test_delta(self, delta_10k):
        rep = verify_deligne(delta_10k)
        assert rep.passed
        assert rep.max_abs < 2.0

    def test_negative_control(self):
        values = np.zeros(11)
        values[1] = 1.0
        values[2] = 3.0
        s = CoefficientSeries(spec=NewformSpec(2, 1, "viol", "file"), n_max=10, values=values)
        rep = verify_deligne(s)
        assert not rep.passed
        assert rep.at_prime == 2

    def test_boundary(self):
        primes = {2: 2.0, 3: 2.0, 5: 2.0, 7: 2.0}
        s = extend_multiplicatively(primes, level=1, n_max=8)
        rep = verify_deligne(s)
        assert rep.max_abs == 2.0
        assert rep.passed
