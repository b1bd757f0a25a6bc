import math

import numpy as np
import pytest

from lfunlab.errors import DataFormatError, IncompleteZerosError, PreconditionError
from lfunlab.primeside import (
    RepresentationProfile,
    ZeroSet,
    classical_psi_step,
    conductor,
    load_zero_table,
    truncated_explicit_formula,
    zero_count_envelope,
)


@pytest.fixture(scope="module")
def zeta_zeros(zeros_path):
    return load_zero_table(zeros_path)


class TestProfile:
    def test_classical_conductor(self):
        p = RepresentationProfile.classical()
        assert conductor(p, 0.0) == 3.0
        assert conductor(p, 10.0) == 13.0
        assert p.theta == 0.0

    def test_holomorphic_weight_twelve(self):
        p = RepresentationProfile.holomorphic(12, 1)
        assert p.mu == (5.5 + 0j, 6.5 + 0j)
        assert conductor(p, 0.0) == pytest.approx(80.75)
        assert p.theta == pytest.approx(0.5 - 0.2)

    def test_conductor_floor(self):
        p = RepresentationProfile(m=3, conductor_arith=1, mu=(0j, 0j, 0j))
        assert p.q0 == pytest.approx(27.0)
        assert p.theta == pytest.approx(0.4)

    def test_validation(self):
        with pytest.raises(PreconditionError):
            RepresentationProfile(m=2, conductor_arith=1, mu=(0j,))


class TestZeroTable:
    def test_packaged_table(self, zeta_zeros):
        assert len(zeta_zeros.ordinates) == 100
        assert zeta_zeros.ordinates[0] == pytest.approx(14.134725141734694, abs=1e-9)
        assert zeta_zeros.ordinates[-1] == pytest.approx(236.5242296658162, abs=1e-9)
        assert zeta_zeros.completeness_T >= zeta_zeros.ordinates[-1]
        assert zeta_zeros.grh

    def test_descending_rejected(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("14.1\n13.9\n")
        with pytest.raises(DataFormatError):
            load_zero_table(p)

    def test_negative_rejected(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("-3.0\n")
        with pytest.raises(DataFormatError):
            load_zero_table(p)

    def test_junk_rejected(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("14.1\nhello\n")
        with pytest.raises(DataFormatError):
            load_zero_table(p)

    def test_comments_and_header(self, tmp_path):
        p = tmp_path / "ok.txt"
        p.write_text("# comment\ncompleteness_T=30\n14.1 # inline\n21.0\n")
        zs = load_zero_table(p)
        assert list(zs.ordinates) == [14.1, 21.0]
        assert zs.completeness_T == 30.0

    def test_up_to_guard(self, zeta_zeros):
        with pytest.raises(IncompleteZerosError):
            zeta_zeros.up_to(10_000.0)


class TestExplicitFormula:
    def test_main_term_only_below_first_zero(self, zeta_zeros):
        profile = RepresentationProfile.classical()
        r = truncated_explicit_formula(100.5, 10.0, zeta_zeros, profile, True)
        assert r.zeros_used == 0
        assert r.zero_sum == 0.0
        want = 100.5 - math.log(2 * math.pi) - 0.5 * math.log(1 - 100.5**-2)
        assert r.estimate == pytest.approx(want, abs=1e-12)

    def test_no_main_term_for_higher_degree(self, zeta_zeros):
        profile = RepresentationProfile.holomorphic(12, 1)
        r = truncated_explicit_formula(100.5, 10.0, zeta_zeros, profile, False)
        assert r.estimate == 0.0
        assert r.main_term == 0.0 and r.classical_correction == 0.0

    def test_residuals_frozen_values(self, zeta_zeros):
        """Measured residuals of the truncated reconstruction at x = 100.5;
        frozen from a 30-digit recomputation."""
        profile = RepresentationProfile.classical()
        step = classical_psi_step(101)
        psi_ref = step.value_at(100.5)
        assert psi_ref == pytest.approx(94.0453112293, abs=1e-9)
        want = {10: 1.7309096653, 30: 1.7185219957, 100: 0.9639474107}
        for count, expected in want.items():
            T = float(zeta_zeros.ordinates[count - 1])
            r = truncated_explicit_formula(100.5, T, zeta_zeros, profile, True)
            assert r.zeros_used == count
            assert abs(r.estimate - psi_ref) == pytest.approx(expected, abs=1e-6)

    def test_residual_trend_is_monotone_over_counts(self, zeta_zeros):
        profile = RepresentationProfile.classical()
        step = classical_psi_step(101)
        psi_ref = step.value_at(100.5)
        residuals = []
        for count in (10, 30, 100):
            T = float(zeta_zeros.ordinates[count - 1])
            r = truncated_explicit_formula(100.5, T, zeta_zeros, profile, True)
            residuals.append(abs(r.estimate - psi_ref))
        assert residuals[1] <= residuals[0] * 1.1
        assert residuals[2] <= residuals[1] * 1.1

    def test_error_budget_shape(self, zeta_zeros):
        profile = RepresentationProfile.holomorphic(12, 1)
        r1 = truncated_explicit_formula(500.5, 50.0, zeta_zeros, profile, False)
        r2 = truncated_explicit_formula(500.5, 200.0, zeta_zeros, profile, False)
        assert set(r1.error_budget) == {"truncation", "trivial_zeros", "contour", "small_tail"}
        assert all(v > 0 for v in r1.error_budget.values())
        # T-dependent reference terms shrink as T grows
        assert r2.error_budget["truncation"] < r1.error_budget["truncation"]
        assert r2.error_budget["contour"] < r1.error_budget["contour"]

    def test_preconditions(self, zeta_zeros):
        classical = RepresentationProfile.classical()
        gl2 = RepresentationProfile.holomorphic(12, 1)
        with pytest.raises(PreconditionError):
            truncated_explicit_formula(100.0, 50.0, zeta_zeros, classical, True)
        with pytest.raises(PreconditionError):
            truncated_explicit_formula(100.5, 50.0, zeta_zeros, gl2, True)
        with pytest.raises(IncompleteZerosError):
            truncated_explicit_formula(100.5, 1e6, zeta_zeros, classical, True)
        no_grh = ZeroSet(
            ordinates=zeta_zeros.ordinates, grh=False, source="x", completeness_T=300.0
        )
        with pytest.raises(PreconditionError):
            truncated_explicit_formula(100.5, 50.0, no_grh, classical, True)


class TestZeroCountEnvelope:
    def test_empty(self):
        empty = ZeroSet(ordinates=np.array([]), grh=True, source="none", completeness_T=100.0)
        env = zero_count_envelope(empty, RepresentationProfile.classical(), [10.0, 50.0])
        assert env.envelope_constant == 0.0
        assert list(env.counts) == [0, 0]

    def test_zeta_count_at_100(self, zeta_zeros):
        env = zero_count_envelope(
            zeta_zeros, RepresentationProfile.classical(), [50.0, 100.0, 200.0]
        )
        assert env.counts[1] == 29  # zeros with gamma <= 100
        assert env.envelope_constant > 0
        # envelope holds by construction at the reported constant
        q0 = 3.0
        for T, N in zip(env.T_grid, env.counts):
            assert N <= env.envelope_constant * T * math.log(q0 * T) + 1e-9

    def test_unit_interval_counts(self, zeta_zeros):
        env = zero_count_envelope(
            zeta_zeros, RepresentationProfile.classical(), list(range(10, 230, 10))
        )
        assert env.unit_constant > 0
        # unit counts at these heights never exceed a handful
        assert env.unit_constant * math.log(3.0 * 220) < 6

    def test_incomplete_guard(self, zeta_zeros):
        with pytest.raises(IncompleteZerosError):
            zero_count_envelope(zeta_zeros, RepresentationProfile.classical(), [1e5])
