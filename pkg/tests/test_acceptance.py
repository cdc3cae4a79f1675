"""
End-to-end checks of the summary-table regimes on the canonical fixtures
"""
import dataclasses

import numpy as np
import pytest

from fem.assembly import assemble
from fem.functionals import norm_equivalence_constants
from model import fixtures
from model.params import timoshenko
from spectral.classify import StabilityKind
from spectral.eigen import spectral_abscissa
from tools.sweep_tool import run_sweep

pytestmark = pytest.mark.slow


def measured_slope(cfg, samples=32):
    cfg = cfg.with_run(samples=samples)
    _, stability, reason = run_sweep(cfg, assemble(cfg), threads=4)
    assert stability is not None, reason
    return stability


@pytest.fixture(scope="module")
def table_slopes():
    return [measured_slope(cfg) for _, cfg, _ in fixtures.table_fixtures(200)]


def test_global_damping_is_analytic(table_slopes):
    row = table_slopes[0]
    assert row.kind is StabilityKind.ANALYTIC
    assert row.slope == pytest.approx(-1.0, abs=0.3)


def test_smooth_local_damping_is_exponential(table_slopes):
    assert abs(table_slopes[1].slope) <= 0.3


def test_nonsmooth_local_damping_is_polynomial(table_slopes):
    assert 0.7 < table_slopes[2].slope <= 2.3


def test_single_bending_damping_grows_fastest(table_slopes):
    assert 0.7 < table_slopes[3].slope <= 4.3
    assert table_slopes[3].slope > table_slopes[2].slope


def test_viscous_local_damping_is_bounded():
    assert abs(measured_slope(fixtures.viscous_local(200)).slope) <= 0.3


@pytest.mark.parametrize("factory", [fixtures.global_kv, fixtures.smooth_local_kv,
                                     fixtures.nonsmooth_local_kv, fixtures.single_local_kv])
def test_spectrum_strictly_stable(factory):
    assert spectral_abscissa(assemble(factory(80))) < 0.0


def test_norm_equivalence_constants_mesh_independent():
    coarse = norm_equivalence_constants(assemble(fixtures.global_kv(100)))
    fine = norm_equivalence_constants(assemble(fixtures.global_kv(200)))
    for a, b in zip(coarse, fine):
        assert abs(a - b) <= 0.05 * abs(b)


def test_curvature_to_zero_approaches_timoshenko():
    cfg = fixtures.global_kv(40)
    straight = assemble(dataclasses.replace(cfg, params=timoshenko(cfg.params))).K.toarray()
    previous = None
    for ell in (1e-2, 1e-4, 1e-6):
        curved = assemble(dataclasses.replace(cfg, params=dataclasses.replace(cfg.params, ell=ell))).K.toarray()
        gap = np.max(np.abs(curved - straight))
        if previous is not None:
            assert gap < previous
        previous = gap
    assert previous <= 1e-5 * np.max(np.abs(straight))


def test_polynomial_slope_stable_under_refinement():
    slopes = [measured_slope(fixtures.nonsmooth_local_kv(n)).slope for n in (50, 100, 200)]
    for coarse, fine in zip(slopes, slopes[1:]):
        assert fine >= coarse - 0.2
