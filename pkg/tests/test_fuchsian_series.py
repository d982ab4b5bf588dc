import math

import numpy as np
import pytest

from llespec import (
    DegeneracyError,
    DomainError,
    FuchsianSystem,
    GeometricLadder,
    LevyDriver,
    PrecisionError,
    ValidationError,
    Variant,
    analytic_null_vector,
    angular_mean_rho,
    blowup_exponent,
    build_matrices,
    eigen_spectrum,
    eta_sequence,
    evaluate_theta,
    evaluate_theta_derivative,
    evaluate_theta_with_tail,
    integrate_system,
    perturbed_n6_driver,
    series_solution,
    validate_eta,
)
from llespec.loewner_system import LoewnerMatrices
from tests.conftest import random_driver

ETA_SLE2 = eta_sequence(LevyDriver(kappa=2.0), 8)
ETA_PLE1 = eta_sequence(LevyDriver(uniform_rate=1.0), 8)


def _system(eta, n, variant):
    return FuchsianSystem(build_matrices(eta, n, variant))


class TestNullVector:
    def test_unbounded_n2(self):
        v = analytic_null_vector(build_matrices(ETA_SLE2, 2, Variant.UNBOUNDED))
        np.testing.assert_allclose(v, [1.0, -1.0], rtol=0, atol=0)

    def test_bounded_ple_n3(self):
        v = analytic_null_vector(build_matrices(ETA_PLE1, 3, Variant.BOUNDED))
        np.testing.assert_allclose(v, [1.0, 1.0, 1.0 / 3.0], rtol=1e-15)

    def test_n1(self):
        v = analytic_null_vector(build_matrices(ETA_SLE2, 1, Variant.UNBOUNDED))
        assert v.tolist() == [1.0]

    def test_annihilated_by_residue_matrix(self, rng):
        for variant in Variant:
            for _ in range(10):
                eta = eta_sequence(random_driver(rng), 7)
                m = build_matrices(eta, 6, variant)
                v = analytic_null_vector(m)
                res = m.a_dense() if variant is Variant.UNBOUNDED else (
                    m.b_dense() - m.a_dense()
                )
                np.testing.assert_allclose(
                    res @ v, np.zeros(6), rtol=0, atol=1e-12 * np.max(np.abs(v))
                )

    def test_degenerate_pivot_detected(self):
        m = build_matrices(ETA_SLE2, 3, Variant.UNBOUNDED)
        doctored = LoewnerMatrices(
            variant=m.variant,
            n=m.n,
            a_diag=np.array([0.0, 0.0, -2.5]),  # zero pivot at row 1
            a_off=m.a_off,
            b_sub=m.b_sub,
            b_diag=m.b_diag,
            b_super=m.b_super,
        )
        with pytest.raises(DegeneracyError):
            analytic_null_vector(doctored)


class TestSeriesSolution:
    def test_starts_at_null_vector(self):
        sys = _system(ETA_SLE2, 2, Variant.UNBOUNDED)
        series = series_solution(sys, 10)
        np.testing.assert_array_equal(series.coefficients[0], [1.0, -1.0])
        assert evaluate_theta(series, 0.0).tolist() == [1.0, -1.0]

    def test_n1_unbounded_is_cubic_growth(self):
        # eta irrelevant at N = 1: theta_0 = (1 - xi)^{-3}
        series = series_solution(_system(ETA_SLE2, 1, Variant.UNBOUNDED), 40)
        binom = [(k + 1) * (k + 2) / 2.0 for k in range(41)]
        np.testing.assert_allclose(series.coefficients[:, 0], binom, rtol=1e-13)

    def test_n1_bounded_terminates(self):
        series = series_solution(_system(ETA_PLE1, 1, Variant.BOUNDED), 10)
        np.testing.assert_allclose(
            series.coefficients[:, 0], [1.0, -1.0] + [0.0] * 9, atol=1e-15
        )

    def test_k_terms_validation(self):
        with pytest.raises(ValidationError):
            series_solution(_system(ETA_SLE2, 2, Variant.UNBOUNDED), 0)

    def test_ode_residual_unbounded(self, rng):
        # xi (xi - 1) theta' = ((xi - 1) A - xi B) theta
        for _ in range(20):
            eta = eta_sequence(random_driver(rng), 8)
            n = int(rng.integers(1, 9))
            m = build_matrices(eta, n, Variant.UNBOUNDED)
            series = series_solution(FuchsianSystem(m), 400)
            a, b = m.a_dense(), m.b_dense()
            for xi in rng.uniform(0.05, 0.8, size=3):
                xi = float(xi)
                th = evaluate_theta(series, xi)
                dth = evaluate_theta_derivative(series, xi)
                lhs = xi * (xi - 1.0) * dth
                rhs = ((xi - 1.0) * a - xi * b) @ th
                scale = np.max(np.abs(rhs)) + np.max(np.abs(lhs)) + 1.0
                assert np.max(np.abs(lhs - rhs)) <= 1e-8 * scale

    def test_ode_residual_bounded(self, rng):
        for _ in range(10):
            eta = eta_sequence(random_driver(rng), 8)
            n = int(rng.integers(1, 9))
            m = build_matrices(eta, n, Variant.BOUNDED)
            series = series_solution(FuchsianSystem(m), 400)
            a, b = m.a_dense(), m.b_dense()
            for xi in (2.0, 5.0, 10.0):
                th = evaluate_theta(series, xi)
                dth = evaluate_theta_derivative(series, xi)
                lhs = xi * (xi - 1.0) * dth
                rhs = ((xi - 1.0) * a - xi * b) @ th
                scale = np.max(np.abs(rhs)) + np.max(np.abs(lhs)) + 1.0
                assert np.max(np.abs(lhs - rhs)) <= 1e-8 * scale


class TestEvaluation:
    def test_domain_unbounded(self):
        series = series_solution(_system(ETA_SLE2, 2, Variant.UNBOUNDED), 10)
        for bad in (-0.1, 1.0, 1.5):
            with pytest.raises(DomainError):
                evaluate_theta(series, bad)

    def test_domain_bounded(self):
        series = series_solution(_system(ETA_PLE1, 3, Variant.BOUNDED), 10)
        for bad in (0.5, 1.0):
            with pytest.raises(DomainError):
                evaluate_theta(series, bad)

    def test_bounded_at_infinity(self):
        series = series_solution(_system(ETA_PLE1, 3, Variant.BOUNDED), 10)
        np.testing.assert_array_equal(
            evaluate_theta(series, math.inf), series.coefficients[0]
        )

    def test_tail_bound_is_honest(self):
        sys = _system(ETA_SLE2, 2, Variant.UNBOUNDED)
        short = series_solution(sys, 500)
        long = series_solution(sys, 2000)
        for xi in (0.5, 0.9):
            got, tail = evaluate_theta_with_tail(short, xi)
            ref = evaluate_theta(long, xi)
            assert tail < 1e-10
            assert np.max(np.abs(got - ref)) <= 10 * tail + 1e-14

    def test_derivative_matches_finite_difference(self):
        series = series_solution(_system(ETA_PLE1, 3, Variant.BOUNDED), 200)
        xi, h = 3.0, 1e-6
        fd = (evaluate_theta(series, xi + h) - evaluate_theta(series, xi - h)) / (
            2 * h
        )
        # central differences carry ~eps/h roundoff, so the gate sits at 1e-6
        np.testing.assert_allclose(
            evaluate_theta_derivative(series, xi), fd, rtol=1e-6, atol=1e-12
        )


class TestAngularMean:
    def test_normalized_at_zero(self):
        series = series_solution(_system(ETA_SLE2, 2, Variant.UNBOUNDED), 10)
        assert angular_mean_rho(series, 0.0) == 1.0

    def test_quadrature_identity_unbounded(self, rng):
        # 256-point circle average of
        # (1 - 2 sqrt(xi) cos phi + xi)(theta_0 + 2 sum theta_n xi^{n/2} cos n phi)
        eta = eta_sequence(random_driver(rng), 8)
        series = series_solution(_system(eta, 6, Variant.UNBOUNDED), 300)
        xi = 0.7
        th = evaluate_theta(series, xi)
        phi = 2 * np.pi * np.arange(256) / 256
        profile = th[0] + 2 * sum(
            th[n] * xi ** (n / 2.0) * np.cos(n * phi) for n in range(1, 6)
        )
        weight = 1 - 2 * np.sqrt(xi) * np.cos(phi) + xi
        quad = float(np.mean(weight * profile))
        assert angular_mean_rho(series, xi) == pytest.approx(quad, rel=1e-9)

    def test_quadrature_identity_bounded(self, rng):
        eta = eta_sequence(random_driver(rng), 8)
        series = series_solution(_system(eta, 6, Variant.BOUNDED), 300)
        xi = 1.5
        th = evaluate_theta(series, xi)
        phi = 2 * np.pi * np.arange(256) / 256
        profile = th[0] + 2 * sum(
            th[n] * xi ** (-n / 2.0) * np.cos(n * phi) for n in range(1, 6)
        )
        weight = 1 - 2 * np.cos(phi) / np.sqrt(xi) + 1 / xi
        quad = float(np.mean(weight * profile))
        assert angular_mean_rho(series, xi) == pytest.approx(quad, rel=1e-9)

    def test_n1_has_no_cross_term(self):
        series = series_solution(_system(ETA_SLE2, 1, Variant.UNBOUNDED), 50)
        xi = 0.3
        th0 = evaluate_theta(series, xi)[0]
        assert angular_mean_rho(series, xi) == pytest.approx((1 + xi) * th0)


class TestLadder:
    def test_points_approach_one(self):
        lad = GeometricLadder(j_min=2, j_max=4)
        assert lad.points(Variant.UNBOUNDED) == [0.75, 0.875, 0.9375]
        assert lad.points(Variant.BOUNDED) == [1.25, 1.125, 1.0625]
        assert lad.distances() == [0.25, 0.125, 0.0625]

    def test_validation(self):
        with pytest.raises(ValidationError):
            GeometricLadder(j_min=5, j_max=5)


class TestBlowup:
    def test_unbounded_truncation_exponent(self):
        fit = blowup_exponent(_system(ETA_SLE2, 2, Variant.UNBOUNDED))
        assert not fit.oscillation_detected
        assert fit.beta_est == pytest.approx(4.0, abs=1e-5)
        assert fit.window[0] == pytest.approx(1 - 2.0**-14)
        assert fit.window[1] == pytest.approx(1 - 2.0**-6)

    def test_bounded_ple_exponent(self):
        fit = blowup_exponent(_system(ETA_PLE1, 3, Variant.BOUNDED))
        assert not fit.oscillation_detected
        assert fit.beta_est == pytest.approx(0.1700864866260337, abs=1e-4)

    def test_perturbed_spectrum_stays_monotone(self):
        # complex pairs sit below the real top eigenvalue, so the mean keeps
        # its sign and the fit tracks the eigenvalue route
        eta = eta_sequence(perturbed_n6_driver(1e-4), 6)
        m = build_matrices(eta, 6, Variant.UNBOUNDED)
        fit = blowup_exponent(FuchsianSystem(m))
        assert not fit.oscillation_detected
        top = eigen_spectrum(m).max_real
        assert fit.beta_est == pytest.approx(top, rel=0.02)

    def test_insufficient_terms_raises(self):
        with pytest.raises(PrecisionError, match="k_terms|integrate_system"):
            blowup_exponent(_system(ETA_SLE2, 2, Variant.UNBOUNDED), k_terms=50)

    def test_slopes_and_residual_reported(self):
        lad = GeometricLadder(j_min=4, j_max=9)
        fit = blowup_exponent(_system(ETA_SLE2, 2, Variant.UNBOUNDED), ladder=lad)
        assert len(fit.slopes) == 5
        assert fit.residual >= 0.0


class TestIntegration:
    def test_matches_series_unbounded(self):
        sys = _system(ETA_SLE2, 2, Variant.UNBOUNDED)
        series = series_solution(sys, 2000)
        start = evaluate_theta(series, 0.01)
        got = integrate_system(sys, 0.01, start, 0.5)
        np.testing.assert_allclose(got, evaluate_theta(series, 0.5), rtol=1e-8)

    def test_matches_series_bounded(self):
        sys = _system(ETA_PLE1, 3, Variant.BOUNDED)
        series = series_solution(sys, 2000)
        start = evaluate_theta(series, 50.0)
        got = integrate_system(sys, 50.0, start, 1.5)
        np.testing.assert_allclose(got, evaluate_theta(series, 1.5), rtol=1e-7)

    def test_cannot_cross_singularity(self):
        sys = _system(ETA_SLE2, 2, Variant.UNBOUNDED)
        with pytest.raises(DomainError):
            integrate_system(sys, 0.5, np.array([1.0, -1.0]), 1.5)
        with pytest.raises(DomainError):
            integrate_system(sys, 1.0, np.array([1.0, -1.0]), 0.5)
        with pytest.raises(DomainError):
            integrate_system(sys, -0.5, np.array([1.0, -1.0]), 0.5)


def test_formal_eta_supported():
    # blowup route works from a raw exponent list, no driver involved
    eta = validate_eta((2.0, 4.0))
    fit = blowup_exponent(
        _system(eta, 2, Variant.UNBOUNDED), ladder=GeometricLadder(j_min=4, j_max=9)
    )
    assert math.isfinite(fit.beta_est)
