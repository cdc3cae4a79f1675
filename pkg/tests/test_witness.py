import dataclasses
import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from fem.assembly import assemble
from model import fixtures
from model.damping import DampingProfile, DampingSpec
from model.params import BeamParameters
from witness.construction import (
    wavenumber,
    witness_coefficients_asymptotic,
    witness_coefficients_exact,
    witness_frequency,
    witness_norms,
    witness_sample,
    witness_system,
)
from witness.series import FLAG_MESSAGE, CrossCheck, check_witness_scenario, cross_check, witness_series
from utils.errors import InsufficientDataError, NumericalError, UsageError
from utils.regression import LinearFit
from utils.report_builders import ReportBuilder

MODES = [4, 8, 16, 32, 64]


@pytest.fixture
def unit_pi():
    return fixtures.witness_fixture().params


def params(**kw):
    base = dict(rho1=1.0, rho2=1.0, k1=1.0, k2=1.0, k3=1.0, ell=0.5, length=math.pi)
    base.update(kw)
    return BeamParameters(**base)


class TestFrequency:
    def test_hand_examples(self):
        assert witness_frequency(3, params()) == pytest.approx(3.0)
        assert witness_frequency(1, params(rho2=2.0, k2=8.0)) == pytest.approx(2.0)

    def test_linear_in_mode_index(self, unit_pi):
        assert witness_frequency(14, unit_pi) == pytest.approx(2.0 * witness_frequency(7, unit_pi))

    def test_bending_dispersion_relation(self):
        p = params(rho2=1.7, k2=3.1, length=2.0)
        lam, k = witness_frequency(5, p), wavenumber(5, p)
        assert p.k2 * k ** 2 == pytest.approx(p.rho2 * lam ** 2)

    def test_mode_index_must_be_positive(self, unit_pi):
        with pytest.raises(UsageError):
            witness_frequency(0, unit_pi)


class TestCoefficients:
    @pytest.mark.parametrize("n", [1, 4, 16, 64])
    def test_solve_residual(self, unit_pi, n):
        _, residual, condition = witness_coefficients_exact(n, unit_pi)
        assert residual <= 1e-12
        assert math.isfinite(condition)

    def test_matches_cramer(self, unit_pi):
        matrix, rhs = witness_system(4, unit_pi)
        det = np.linalg.det(matrix)
        expected = []
        for j in range(3):
            replaced = matrix.copy()
            replaced[:, j] = rhs
            expected.append(np.linalg.det(replaced) / det)
        coeffs, _, _ = witness_coefficients_exact(4, unit_pi)
        assert np.allclose(coeffs, expected, rtol=1e-10, atol=1e-14)

    def test_exact_approaches_asymptotic(self, unit_pi):
        coeffs, _, _ = witness_coefficients_exact(20, unit_pi)
        a_inf, b_inf, c_inf = witness_coefficients_asymptotic(20, unit_pi)
        assert b_inf == pytest.approx(1.0)
        assert 20 * abs(coeffs[1] - b_inf) <= 5.0
        assert abs(coeffs[2] - c_inf) <= 0.5 * abs(c_inf)

    def test_bending_error_decays_like_one_over_n(self, unit_pi):
        scaled = []
        for n in (8, 16, 32, 64, 128):
            b = witness_coefficients_exact(n, unit_pi)[0][1]
            scaled.append(n * abs(b - witness_coefficients_asymptotic(n, unit_pi)[1]))
        assert max(scaled) <= 2.0 * scaled[0]

    @pytest.mark.parametrize("slot", [0, 2])
    def test_shear_and_axial_errors_stay_order_one_over_n(self, unit_pi, slot):
        scaled = []
        for n in (8, 16, 32, 64):
            exact = witness_coefficients_exact(n, unit_pi)[0][slot]
            scaled.append(n * abs(exact - witness_coefficients_asymptotic(n, unit_pi)[slot]))
        assert max(scaled) <= 2.0 * scaled[0]
        assert scaled[-1] <= scaled[0]

    def test_shear_coefficient_vanishes_on_equal_speeds(self, unit_pi):
        assert witness_coefficients_asymptotic(10, unit_pi)[0] == 0.0

    def test_asymptotic_scaling(self):
        p = params(rho1=2.0)
        a1, b1, c1 = witness_coefficients_asymptotic(6, p)
        a2, b2, c2 = witness_coefficients_asymptotic(12, p)
        assert a1 != 0.0
        assert a2 == pytest.approx(0.5 * a1)
        assert c2 == pytest.approx(0.5 * c1)
        assert b2 == pytest.approx(b1)

    def test_asymptotic_undefined(self):
        with pytest.raises(NumericalError):
            witness_coefficients_asymptotic(3, params(k3=2.0, ell=1.0))


class TestNorms:
    def test_state_norm_dominates_bending_velocity(self, unit_pi):
        for n in MODES:
            s = witness_sample(n, unit_pi)
            bound = math.sqrt(0.5 * unit_pi.length * unit_pi.rho2) * s.lambda_n * abs(s.coeffs[1])
            assert s.norm_V >= bound

    def test_against_quadrature(self):
        p = params(rho1=1.3, rho2=0.8, k1=2.0, k2=1.5, k3=0.7, ell=0.4, length=2.5)
        n = 1
        (a, b, c), _, _ = witness_coefficients_exact(n, p)
        lam, k = witness_frequency(n, p), wavenumber(n, p)
        x = np.linspace(0.0, p.length, 10_000)
        s, co = np.sin(k * x), np.cos(k * x)
        phi, psi, w = a * s, b * co, c * co
        phi_x, psi_x, w_x = a * k * co, -b * k * s, -c * k * s
        density = (p.rho1 * abs(1j * lam * phi) ** 2 + p.rho2 * abs(1j * lam * psi) ** 2
                   + p.rho1 * abs(1j * lam * w) ** 2
                   + p.k1 * abs(phi_x + psi + p.ell * w) ** 2 + p.k2 * abs(psi_x) ** 2
                   + p.k3 * abs(w_x - p.ell * phi) ** 2)
        psi_xx, w_xx = -b * k ** 2 * co, -c * k ** 2 * co
        res_density = (p.rho2 * abs(p.rho2 * co - 1j * lam * psi_xx) ** 2
                       + p.rho1 * abs(-1j * lam * w_xx) ** 2)
        norm_v, norm_res = witness_norms(n, p)
        assert norm_v == pytest.approx(math.sqrt(trapezoid(density, x)), rel=1e-6)
        assert norm_res == pytest.approx(math.sqrt(trapezoid(res_density, x)), rel=1e-6)

    def test_zero_coefficients_leave_the_forcing(self, unit_pi):
        norm_v, norm_res = witness_norms(5, unit_pi, coeffs=(0j, 0j, 0j))
        assert norm_v == 0.0
        assert norm_res == pytest.approx(unit_pi.rho2 ** 1.5 * math.sqrt(unit_pi.length / 2.0))

    def test_ansatz_respects_mean_free_constraint(self, unit_pi):
        x = np.linspace(0.0, unit_pi.length, 4001)
        for n in (1, 2, 7):
            assert abs(trapezoid(np.cos(wavenumber(n, unit_pi) * x), x)) <= 1e-6


class TestSeries:
    def test_state_norm_grows_linearly(self, unit_pi):
        report = witness_series(MODES, unit_pi)
        assert report.p == pytest.approx(1.0, abs=0.1)
        # the residual carries i lambda D2 psi_xx, which grows like n^3
        assert report.q == pytest.approx(3.0, abs=0.15)
        assert not report.flagged
        assert report.flag_text == "none"

    def test_mode_order_irrelevant(self, unit_pi):
        a = witness_series(MODES, unit_pi)
        b = witness_series([32, 4, 64, 16, 8], unit_pi)
        assert [s.n for s in b.samples] == MODES
        assert b.p == a.p and b.q == a.q

    def test_too_few_modes(self, unit_pi):
        with pytest.raises(InsufficientDataError):
            witness_series([4, 8, 16], unit_pi)

    def test_duplicate_modes(self, unit_pi):
        with pytest.raises(UsageError):
            witness_series([4, 4, 8, 16], unit_pi)

    def test_flag_raised_when_residual_grows_slower(self, unit_pi):
        report = witness_series(MODES, unit_pi)
        slower = dataclasses.replace(report, residual_fit=LinearFit(0.5, 0.0, 1.0, 0.0))
        assert slower.flagged
        assert slower.flag_text == FLAG_MESSAGE
        assert f"flag={FLAG_MESSAGE}" in ReportBuilder.witness(slower)


class TestCrossCheckVerdict:
    def test_sign_agreement(self):
        assert CrossCheck([4.0, 8.0], [1.0, 2.0], 1.0, 0.5).verdict == "PASS"
        assert CrossCheck([4.0, 8.0], [2.0, 1.0], -1.0, -2.0).verdict == "PASS"
        assert CrossCheck([4.0, 8.0], [1.0, 2.0], 1.0, -2.0).verdict == "FAIL"

    def test_without_slope(self):
        check = CrossCheck([4.0], [1.0], None, -2.0)
        assert check.agree is None
        assert check.verdict == "n/a"

    def test_report_line(self, unit_pi):
        report = witness_series(MODES, unit_pi)
        lines = ReportBuilder.witness(report, CrossCheck([4.0, 8.0], [1.0, 2.0], 0.4, -2.0))
        assert lines[-1] == "cross_check=FAIL (resolvent slope=0.4000, witness exponent p-q=-2.0000)"


class TestScenarioCheck:
    def test_witness_fixture_accepted(self):
        check_witness_scenario(fixtures.witness_fixture())

    def test_dddd_rejected(self):
        with pytest.raises(UsageError, match="DNND required"):
            check_witness_scenario(fixtures.global_kv(10))

    def test_wrong_damping_rejected(self):
        cfg = fixtures.witness_fixture()
        g = DampingProfile.global_(cfg.params.length, 1.0)
        with pytest.raises(UsageError, match="Kelvin-Voigt damping D1 = 0"):
            check_witness_scenario(dataclasses.replace(cfg, damping=DampingSpec(g, g, g)))


@pytest.mark.slow
def test_cross_check_against_discrete_resolvent():
    cfg = fixtures.witness_fixture(400)
    report = witness_series(MODES, cfg.params)
    result = cross_check(report, assemble(cfg))
    assert result.skipped == [64]
    assert len(result.norms) == 4
    assert all(norm > 0.0 for norm in result.norms)
    assert result.witness_exponent == pytest.approx(report.p - report.q)
    # resolvent norms grow along lambda_n while the state-to-residual ratio decays
    assert result.witness_exponent == pytest.approx(-2.0, abs=0.15)
    assert result.slope > 0.0
    assert result.agree is False
    assert result.verdict == "FAIL"
    lines = ReportBuilder.witness(report, result)
    assert any(line.startswith("cross_check=FAIL (resolvent slope=") for line in lines)
    assert "cross_check_skipped_modes=[64]" in lines
