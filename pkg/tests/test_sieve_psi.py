import math

import numpy as np
import pytest

from lfunlab.errors import CapacityError, PreconditionError
from lfunlab.satake import power_sums, satake_from_hecke
from lfunlab.sieve import (
    factorize,
    primes_up_to,
    smallest_prime_factor_table,
    von_mangoldt_table,
)
from lfunlab.primeside import (
    classical_psi_step,
    gl2_prime_power_coeffs,
    gl2_psi_step,
    psi,
    sample_psi,
    subtract_main_term,
)

PSI_10 = 3 * math.log(2) + 2 * math.log(3) + math.log(5) + math.log(7)  # 7.83192...


def naive_von_mangoldt(n):
    for p in range(2, n + 1):
        k = n
        if n % p == 0:
            while k % p == 0:
                k //= p
            return math.log(p) if k == 1 else 0.0
    return 0.0


class TestSieve:
    def test_spf_small(self):
        spf = smallest_prime_factor_table(20)
        assert list(spf[2:13]) == [2, 3, 2, 5, 2, 7, 2, 3, 2, 11, 2]

    def test_primes(self):
        assert list(primes_up_to(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]

    def test_factorize(self):
        spf = smallest_prime_factor_table(1000)
        assert factorize(360, spf) == [(2, 3), (3, 2), (5, 1)]

    def test_von_mangoldt_values(self):
        lam = von_mangoldt_table(2000)
        assert lam[6] == 0.0
        assert lam[8] == pytest.approx(math.log(2))
        assert lam[1] == 0.0
        assert sum(lam[: 10 + 1]) == pytest.approx(PSI_10, abs=1e-12)

    def test_von_mangoldt_vs_naive(self):
        lam = von_mangoldt_table(300)
        for n in range(2, 301):
            assert lam[n] == pytest.approx(naive_von_mangoldt(n), abs=1e-14)


class TestGl2PrimePowerCoeffs:
    def test_constant_two(self):
        from lfunlab.coefficients import extend_multiplicatively

        s = extend_multiplicatively({p: 2.0 for p in (2, 3, 5, 7, 11, 13)}, level=1, n_max=16)
        coeffs = gl2_prime_power_coeffs(s).as_dict()
        for pk in (2, 4, 8, 16):
            assert coeffs[pk] == pytest.approx(2.0)

    def test_zero_eigenvalue_pattern(self):
        from lfunlab.coefficients import extend_multiplicatively

        s = extend_multiplicatively({p: 0.0 for p in (2, 3, 5, 7, 11, 13)}, level=1, n_max=16)
        coeffs = gl2_prime_power_coeffs(s).as_dict()
        # alpha = +-i: power sums cycle 0, -2, 0, 2
        assert coeffs[2] == 0.0
        assert coeffs[4] == pytest.approx(-2.0)
        assert coeffs[8] == 0.0
        assert coeffs[16] == pytest.approx(2.0)

    def test_matches_satake_power_sums(self, delta_1k):
        coeffs = gl2_prime_power_coeffs(delta_1k).as_dict()
        for p in primes_up_to(1000):
            p = int(p)
            local = satake_from_hecke(float(delta_1k.values[p]), 1, p)
            sums = power_sums(local, 10)
            pk = p
            for k in range(1, 11):
                if pk > 1000:
                    break
                assert coeffs[pk] == pytest.approx(sums[k - 1].real, abs=1e-10)
                pk *= p

    def test_capacity_validation(self, delta_1k):
        with pytest.raises(PreconditionError):
            gl2_prime_power_coeffs(delta_1k, 5000)


class TestPsi:
    def test_below_two(self):
        step = classical_psi_step(50)
        assert psi(1.5, step) == 0.0

    def test_classical_at_ten(self):
        step = classical_psi_step(50)
        assert psi(10.0, step) == pytest.approx(PSI_10, abs=1e-12)

    def test_step_constant_between_prime_powers(self):
        step = classical_psi_step(50)
        assert psi(10.4, step) == psi(10.0, step) == psi(10.99, step)
        assert psi(11.0, step) > psi(10.99, step)

    def test_classical_vs_naive_loop(self):
        step = classical_psi_step(10_000)
        for x in (100.0, 999.5, 10_000.0):
            naive = sum(naive_von_mangoldt(n) for n in range(2, int(x) + 1))
            assert psi(x, step) == pytest.approx(naive, abs=1e-9)

    def test_gl2_vs_naive_loop(self, delta_1k):
        step = gl2_psi_step(delta_1k, 100)
        coeffs = gl2_prime_power_coeffs(delta_1k, 100).as_dict()
        naive = 0.0
        for n in range(2, 101):
            if naive_von_mangoldt(n) > 0:
                naive += naive_von_mangoldt(n) * coeffs[n]
        assert psi(100.0, step) == pytest.approx(naive, abs=1e-10)

    def test_capacity(self):
        step = classical_psi_step(100)
        with pytest.raises(CapacityError):
            psi(101.0, step)

    def test_weighted_sequence_layout(self, delta_1k):
        step = gl2_psi_step(delta_1k, 30)
        seq = step.weighted_sequence()
        assert seq[6] == 0.0  # not a prime power
        assert seq[8] == pytest.approx(math.log(2) * gl2_prime_power_coeffs(delta_1k, 30).as_dict()[8])


class TestPsiSeries:
    def test_sampling_and_centering(self):
        step = classical_psi_step(1000)
        grid = np.array([10.0, 100.0, 1000.0])
        series = sample_psi(step, grid)
        assert series.values[0] == pytest.approx(PSI_10)
        centered = subtract_main_term(series)
        assert centered.values[0] == pytest.approx(PSI_10 - 10.0)

    def test_grid_validation(self):
        step = classical_psi_step(100)
        with pytest.raises(PreconditionError):
            sample_psi(step, np.array([10.0, 10.0]))
