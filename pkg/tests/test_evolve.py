import numpy as np
import pytest
import scipy.linalg

from evolve.integrator import simulate, step_midpoint
from evolve.trace import EnergyTrace
from fem.assembly import assemble
from fem.functionals import energy
from fem.initial import Modal, RandomHighFreq, sample_initial
from fem.state import StateVector
from model import fixtures
from tests.conftest import read_csv
from utils.errors import UsageError


def g_norm(op, x):
    return float(np.sqrt(np.real(np.vdot(x, op.G @ x))))


class TestMidpointStep:
    def test_undamped_energy_is_conserved(self):
        op = assemble(fixtures.undamped(100))
        s0 = sample_initial(op, Modal(2))
        trace = simulate(op, s0, T=10.0, dt=0.01)
        assert abs(trace.energies[-1] - trace.energies[0]) <= 1e-8
        assert np.max(np.abs(trace.energies - 1.0)) <= 1e-8

    @pytest.mark.parametrize("factory", [fixtures.global_kv, fixtures.smooth_local_kv, fixtures.nonsmooth_local_kv,
                                         fixtures.single_local_kv, fixtures.viscous_local])
    def test_damped_energy_balance(self, factory):
        op = assemble(factory(20))
        s0 = sample_initial(op, RandomHighFreq(5))
        trace = simulate(op, s0, T=2.0, sample_every=1)
        assert trace.metadata["max_balance_residual"] <= 1e-9 * trace.energies[0]
        assert np.all(np.diff(trace.energies) <= 1e-12)

    def test_second_order_against_matrix_exponential(self):
        op = assemble(fixtures.global_kv(8))
        s0 = sample_initial(op, Modal(1))
        A = op.generator_dense()
        errors = []
        for dt in (0.02, 0.01, 0.005):
            trace = simulate(op, s0, T=1.0, dt=dt)
            t_end = trace.metadata["steps"] * dt
            exact = scipy.linalg.expm(t_end * A) @ s0.as_array()
            errors.append(g_norm(op, trace.metadata["final_state"].as_array() - exact))
        ratios = [errors[0] / errors[1], errors[1] / errors[2]]
        for r in ratios:
            assert 3.5 < r < 4.5

    def test_linear_in_the_initial_state(self, small_local_op):
        s0 = sample_initial(small_local_op, RandomHighFreq(2))
        a = simulate(small_local_op, s0, T=0.5, dt=0.01)
        b = simulate(small_local_op, s0.scaled(3.0), T=0.5, dt=0.01)
        assert np.allclose(b.energies, 9.0 * a.energies, rtol=1e-10, atol=0.0)

    def test_zero_state_stays_zero(self, small_local_op):
        s = step_midpoint(small_local_op, StateVector.zeros(small_local_op.layout), 0.01)
        assert not np.any(s.as_array())

    def test_nonpositive_step_rejected(self, small_local_op):
        with pytest.raises(UsageError):
            step_midpoint(small_local_op, StateVector.zeros(small_local_op.layout), 0.0)
        with pytest.raises(UsageError):
            simulate(small_local_op, StateVector.zeros(small_local_op.layout), T=-1.0)

    def test_global_damping_decays_fast(self):
        op = assemble(fixtures.global_kv(50))
        trace = simulate(op, sample_initial(op, RandomHighFreq(0)), T=20.0)
        assert trace.energies[-1] < 1e-3 * trace.energies[0]

    def test_dnnd_means_preserved(self):
        op = assemble(fixtures.witness_fixture(20))
        trace = simulate(op, sample_initial(op, RandomHighFreq(4)), T=1.0)
        final = trace.metadata["final_state"]
        for field in ("psi", "w"):
            assert abs(op.layout.means(final.u)[field]) <= 1e-12
            assert abs(op.layout.means(final.v)[field]) <= 1e-12


class TestEnergyTrace:
    def test_sampling_cadence(self, small_local_op):
        s0 = sample_initial(small_local_op, Modal(1))
        trace = simulate(small_local_op, s0, T=1.0, dt=0.01, sample_every=10)
        assert len(trace) == 11
        assert trace.times[-1] == pytest.approx(1.0)
        assert trace.energies[0] == pytest.approx(energy(small_local_op, s0))
        assert trace.metadata["scheme"] == "implicit_midpoint"
        assert trace.metadata["scenario_hash"] == small_local_op.cfg.config_hash()

    def test_columns_must_agree(self):
        with pytest.raises(ValueError):
            EnergyTrace(np.arange(3.0), np.ones(2), np.ones(3))
        with pytest.raises(ValueError):
            EnergyTrace(np.array([0.0, 1.0, 1.0]), np.ones(3), np.ones(3))

    def test_csv_output(self, tmp_path):
        trace = EnergyTrace(np.array([0.0, 0.5]), np.array([1.0, 0.25]), np.array([0.0, 0.1]))
        path = tmp_path / "trace.csv"
        trace.to_csv(str(path), ["model=exponential"])
        text = path.read_text(encoding="utf-8")
        assert text.splitlines()[0] == "t,energy,dissipation"
        assert text.endswith("# model=exponential\n")
        assert read_csv(str(path)) == [[0.0, 1.0, 0.0], [0.5, 0.25, 0.1]]
