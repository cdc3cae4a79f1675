import numpy as np
import pytest

from evolve.trace import EnergyTrace
from fitting.decay import FitModel, crossover_time, fit_decay
from utils.errors import InsufficientDataError


def trace_of(t, e):
    t = np.asarray(t, dtype=float)
    return EnergyTrace(t, np.asarray(e, dtype=float), np.zeros_like(t))


class TestModelSelection:
    def test_exponential_rate(self):
        t = np.linspace(0.0, 10.0, 200)
        fit = fit_decay(trace_of(t, np.exp(-2.0 * t)))
        assert fit.model is FitModel.EXPONENTIAL
        assert fit.delta == pytest.approx(2.0, rel=1e-2)
        assert fit.gamma is None
        assert fit.prefactor == pytest.approx(1.0, rel=1e-6)
        assert fit.residual < fit.competing_residual

    def test_polynomial_rate(self):
        t = np.linspace(1.0, 100.0, 200)
        fit = fit_decay(trace_of(t, 1.0 / t))
        assert fit.model is FitModel.POLYNOMIAL
        assert fit.gamma == pytest.approx(1.0, rel=1e-2)
        assert fit.delta is None

    def test_window_is_trailing_fraction(self):
        t = np.linspace(0.0, 10.0, 201)
        fit = fit_decay(trace_of(t, np.exp(-t)))
        assert fit.window == (pytest.approx(4.0), pytest.approx(10.0))
        assert fit.n_window == 121

    def test_constant_energy_is_degenerate(self):
        t = np.linspace(0.0, 10.0, 100)
        fit = fit_decay(trace_of(t, np.full_like(t, 0.7)))
        assert fit.degenerate
        assert fit.model is FitModel.POLYNOMIAL
        assert fit.rate == pytest.approx(0.0, abs=1e-9)
        assert fit.crossover_time is None
        assert "flags=degenerate (no decay)" in fit.comment_lines()

    def test_amplitude_scaling_changes_prefactor_only(self):
        t = np.linspace(0.0, 10.0, 200)
        a = fit_decay(trace_of(t, np.exp(-2.0 * t)))
        b = fit_decay(trace_of(t, 5.0 * np.exp(-2.0 * t)))
        assert b.rate == pytest.approx(a.rate, rel=1e-9)
        assert b.prefactor == pytest.approx(5.0 * a.prefactor, rel=1e-9)

    def test_time_scaling_divides_the_rate(self):
        t = np.linspace(0.0, 10.0, 200)
        a = fit_decay(trace_of(t, np.exp(-2.0 * t)))
        b = fit_decay(trace_of(2.0 * t, np.exp(-2.0 * t)))
        assert b.delta == pytest.approx(0.5 * a.delta, rel=1e-9)


class TestGuards:
    def test_underflow_shrinks_the_window(self):
        t = np.linspace(0.0, 10.0, 200)
        fit = fit_decay(trace_of(t, np.exp(-10.0 * t)))
        assert fit.underflow
        assert fit.window[1] < 7.0
        assert fit.delta == pytest.approx(10.0, rel=1e-2)
        assert "flags=energy underflow, window shrunk" in fit.comment_lines()

    def test_too_few_samples(self):
        t = np.linspace(0.0, 1.0, 49)
        with pytest.raises(InsufficientDataError):
            fit_decay(trace_of(t, np.exp(-t)))

    def test_window_fraction_range(self):
        t = np.linspace(0.0, 1.0, 60)
        with pytest.raises(ValueError):
            fit_decay(trace_of(t, np.exp(-t)), window_fraction=0.0)

    def test_comment_header(self):
        t = np.linspace(0.0, 10.0, 200)
        line = fit_decay(trace_of(t, np.exp(-2.0 * t))).comment_lines()[0]
        assert line.startswith("model=exponential, rate=2")
        assert "window=[" in line


class TestCrossover:
    def test_polynomial_then_exponential(self):
        t = np.linspace(1.0, 60.0, 300)
        e = np.exp(-0.5 * np.maximum(0.0, t - 20.0)) / t
        flip = crossover_time(t, e)
        assert flip is not None and 10.0 < flip < 45.0
        assert fit_decay(trace_of(t, e)).crossover_time == flip

    def test_pure_exponential_has_no_crossover(self):
        t = np.linspace(0.0, 10.0, 200)
        assert crossover_time(t, np.exp(-t)) is None

    def test_short_trace(self):
        assert crossover_time(np.linspace(1.0, 2.0, 10), np.linspace(1.0, 0.5, 10)) is None
