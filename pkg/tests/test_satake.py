import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfunlab.errors import ConsistencyError, PreconditionError
from lfunlab.oracles import geometric_product_series, power_sums_extended
from lfunlab.satake import (
    SatakeLocalData,
    brumley_check,
    homogeneous_sums,
    lambda_sum_lower_bound,
    local_table,
    newton_residuals,
    power_sum_unit_index,
    power_sums,
    random_unimodular_det_one,
    rankin_selberg_table,
    satake_from_hecke,
)


def unit(theta):
    return cmath.exp(1j * theta)


class TestSatakeLocalData:
    def test_trivial_bound_enforced(self):
        with pytest.raises(PreconditionError):
            SatakeLocalData(p=2, alphas=(3.0 + 0j,), unramified=True)
        # the same modulus is fine at a larger prime
        SatakeLocalData(p=11, alphas=(3.0 + 0j,), unramified=True)

    def test_unimodular_marker(self):
        with pytest.raises(PreconditionError):
            SatakeLocalData(p=2, alphas=(0.5 + 0j,), unimodular=True)
        # zero entries are exempt from the unimodularity check
        SatakeLocalData(p=2, alphas=(1.0 + 0j, 0j), unramified=False, unimodular=True)

    def test_bad_p(self):
        with pytest.raises(PreconditionError):
            SatakeLocalData(p=1, alphas=(1.0 + 0j,))


class TestPowerSums:
    def test_all_ones(self):
        d = SatakeLocalData(p=2, alphas=(1.0 + 0j,))
        assert power_sums(d, 3) == [1, 1, 1]

    def test_cancellation(self):
        d = SatakeLocalData(p=2, alphas=(1.0 + 0j, -1.0 + 0j))
        assert power_sums(d, 4) == [0, 2, 0, 2]

    def test_matches_extended_precision_oracle(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            d = random_unimodular_det_one(3, rng)
            got = power_sums(d, 12)
            want = power_sums_extended(d.alphas, 12)
            assert max(abs(g - complex(w)) for g, w in zip(got, want)) < 1e-12

    def test_k_validation(self):
        d = SatakeLocalData(p=2, alphas=(1.0 + 0j,))
        with pytest.raises(PreconditionError):
            power_sums(d, 0)


class TestHomogeneousSums:
    def test_geometric(self):
        d = SatakeLocalData(p=2, alphas=(1.0 + 0j,))
        assert homogeneous_sums(d, 5) == [1, 1, 1, 1, 1, 1]

    def test_derivative_of_geometric(self):
        d = SatakeLocalData(p=2, alphas=(1.0 + 0j, 1.0 + 0j))
        got = homogeneous_sums(d, 6)
        assert [round(v.real) for v in got] == [k + 1 for k in range(7)]

    def test_parity_pattern_vs_series_product(self):
        d = SatakeLocalData(p=2, alphas=(1.0 + 0j, -1.0 + 0j))
        got = homogeneous_sums(d, 8)
        oracle = geometric_product_series(d.alphas, 8)
        for k in range(9):
            assert abs(got[k] - complex(oracle[k])) < 1e-12
            assert abs(got[k] - (1.0 if k % 2 == 0 else 0.0)) < 1e-12

    @settings(max_examples=80, deadline=None)
    @given(
        m=st.integers(1, 6),
        seed=st.integers(0, 2**31),
        k=st.integers(1, 20),
    )
    def test_newton_identity_property(self, m, seed, k):
        rng = np.random.default_rng(seed)
        r = rng.uniform(0, 2, size=m)
        th = rng.uniform(0, 2 * math.pi, size=m)
        d = SatakeLocalData(p=7, alphas=tuple(r * np.exp(1j * th)), unramified=False)
        lam = homogeneous_sums(d, k)
        ps = power_sums(d, k)
        assert max(newton_residuals(lam, ps)) <= 1e-10
        oracle = geometric_product_series(d.alphas, k)
        scaled = max(
            abs(lam[i] - complex(oracle[i])) / max(1.0, abs(complex(oracle[i])))
            for i in range(k + 1)
        )
        assert scaled <= 1e-10


class TestLocalTable:
    def test_roundtrip_consistency(self):
        rng = np.random.default_rng(3)
        d = random_unimodular_det_one(4, rng)
        t = local_table(d, 10)
        assert t.lambdas[0] == 1
        assert len(t.powsums) == 10

    def test_depth_validation(self):
        d = SatakeLocalData(p=2, alphas=(1.0 + 0j,))
        with pytest.raises(PreconditionError):
            local_table(d, 0)


class TestRankinSelberg:
    def test_single_unimodular(self):
        d = SatakeLocalData(p=5, alphas=(unit(0.7),), unimodular=True)
        t = rankin_selberg_table(d, 6)
        assert t.betas == (pytest.approx(1.0),)
        assert all(abs(v - 1.0) < 1e-12 for v in t.lambda_rs)

    def test_conjugate_pair_nonnegative(self):
        theta = math.pi / 5
        d = SatakeLocalData(p=2, alphas=(unit(theta), unit(-theta)), unimodular=True)
        t = rankin_selberg_table(d, 6)
        assert min(t.lambda_rs) >= -1e-10
        oracle = geometric_product_series(t.betas, 6)
        for k in range(7):
            assert abs(t.lambda_rs[k] - complex(oracle[k]).real) < 1e-10

    def test_quadruple_geometric(self):
        d = SatakeLocalData(p=2, alphas=(1.0 + 0j, 1.0 + 0j))
        t = rankin_selberg_table(d, 6)
        want = [math.comb(n + 3, 3) for n in range(7)]
        assert [round(v) for v in t.lambda_rs] == want

    def test_powsum_rs_is_square_magnitude(self):
        rng = np.random.default_rng(11)
        d = random_unimodular_det_one(3, rng)
        t = rankin_selberg_table(d, 5)
        a = power_sums(d, 5)
        for k in range(5):
            assert t.powsum_rs[k] == pytest.approx(abs(a[k]) ** 2, abs=1e-12)
            assert t.powsum_rs[k] >= 0

    def test_zero_tolerance_trips_consistency(self):
        rng = np.random.default_rng(5)
        d = random_unimodular_det_one(3, rng)
        with pytest.raises(ConsistencyError):
            rankin_selberg_table(d, 8, tol=0.0)


class TestDetOneBounds:
    def test_brumley_conjugate_pair(self):
        theta = 1.1
        d = SatakeLocalData(p=2, alphas=(unit(theta), unit(-theta)), unimodular=True)
        value, ok = brumley_check(d)
        assert ok and value >= 1.0 - 1e-10

    def test_brumley_double_root(self):
        d = SatakeLocalData(p=2, alphas=(1.0 + 0j, 1.0 + 0j))
        value, ok = brumley_check(d)
        assert round(value) == 10 and ok  # C(5,3) from the quadruple product

    def test_brumley_precondition(self):
        d = SatakeLocalData(p=2, alphas=(1j, 1.0 + 0j), unimodular=True)
        with pytest.raises(PreconditionError):
            brumley_check(d)

    def test_lambda_sum_imaginary_pair(self):
        d = SatakeLocalData(p=2, alphas=(1j, -1j), unimodular=True)
        total, ok = lambda_sum_lower_bound(d)
        # lambda(p) = 0 and lambda(p^2) = -1, so the sum of magnitudes is 1
        assert total == pytest.approx(1.0, abs=1e-12)
        assert ok

    def test_lambda_sum_sixth_roots(self):
        theta = math.pi / 3
        d = SatakeLocalData(p=2, alphas=(unit(theta), unit(-theta)), unimodular=True)
        total, ok = lambda_sum_lower_bound(d)
        assert total == pytest.approx(1.0, abs=1e-12)
        assert ok

    def test_unit_index_plus_minus_one(self):
        d = SatakeLocalData(p=2, alphas=(1.0 + 0j, -1.0 + 0j))
        assert power_sum_unit_index(d) == 2

    def test_unit_index_forced_second(self):
        theta = 1.4  # |2 cos theta| < 1 forces |2 cos 2 theta| >= 1
        d = SatakeLocalData(p=2, alphas=(unit(theta), unit(-theta)), unimodular=True)
        assert power_sum_unit_index(d) == 2

    def test_unit_index_random_draws(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            d = random_unimodular_det_one(3, rng)
            assert power_sum_unit_index(d) is not None


class TestSatakeFromHecke:
    def test_double_root(self):
        d = satake_from_hecke(2.0, 1, 2)
        assert d.alphas == ((1 + 0j), (1 + 0j))

    def test_pure_imaginary(self):
        d = satake_from_hecke(0.0, 1, 2)
        assert set(d.alphas) == {1j, -1j}

    def test_delta_eigenvalue_is_unimodular(self, delta_1k):
        lam2 = delta_1k.values[2]
        assert lam2 == pytest.approx(-24 / 2**5.5)
        d = satake_from_hecke(lam2, 1, 2)
        assert abs(abs(d.alphas[0]) - 1.0) < 1e-12
        assert d.unimodular

    def test_roundtrip(self):
        rng = np.random.default_rng(23)
        for lam in rng.uniform(-2, 2, size=100):
            d = satake_from_hecke(float(lam), 1, 5)
            assert power_sums(d, 1)[0].real == pytest.approx(float(lam), abs=1e-12)

    def test_ramified(self):
        d = satake_from_hecke(0.3, 0, 7)
        assert d.alphas == (0.3 + 0j, 0j)
        assert not d.unramified

    def test_chi_validation(self):
        with pytest.raises(PreconditionError):
            satake_from_hecke(1.0, 2, 3)
