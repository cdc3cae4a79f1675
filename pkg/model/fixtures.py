"""
Canonical scenarios: one per summary-table row, the witness configuration and an undamped beam
The TOML files under scenarios/ describe the same configurations
"""
import math
from typing import Dict, List, Tuple

from .damping import DampingModel, DampingProfile, DampingSpec
from .params import BeamParameters
from .regimes import Regime
from .scenario import BoundaryCondition, RunSettings, ScenarioConfig

# Damped interval shared by the localized fixtures
OMEGA = (0.3, 0.7)
RAMP = 0.15


def standard_params(length: float = 1.0, ell: float = 1.0) -> BeamParameters:
    return BeamParameters(rho1=1.0, rho2=1.0, k1=1.0, k2=1.0, k3=1.0, ell=ell, length=length)


def _cfg(name: str, damping: DampingSpec, n_elements: int, bc=BoundaryCondition.FULL_DIRICHLET,
         params: BeamParameters = None) -> ScenarioConfig:
    params = params or standard_params()
    return ScenarioConfig(params, damping, bc, RunSettings(n_elements=n_elements), name)


def global_kv(n_elements: int = 200) -> ScenarioConfig:
    L = standard_params().length
    g = DampingProfile.global_(L, 1.0)
    return _cfg("row1_global_kv", DampingSpec(g, g, g), n_elements)


def smooth_local_kv(n_elements: int = 200) -> ScenarioConfig:
    L = standard_params().length
    s = DampingProfile.smoothstep(L, OMEGA[0], OMEGA[1], 1.0, RAMP)
    return _cfg("row2_smooth_local_kv", DampingSpec(s, s, s), n_elements)


def nonsmooth_local_kv(n_elements: int = 200) -> ScenarioConfig:
    L = standard_params().length
    ind = DampingProfile.indicator(L, OMEGA[0], OMEGA[1], 1.0)
    return _cfg("row3_nonsmooth_local_kv", DampingSpec(ind, ind, ind), n_elements)


def single_local_kv(n_elements: int = 200) -> ScenarioConfig:
    L = standard_params().length
    z = DampingProfile.zero(L)
    ind = DampingProfile.indicator(L, OMEGA[0], OMEGA[1], 1.0)
    return _cfg("row4_single_local_kv", DampingSpec(z, ind, z), n_elements)


def viscous_local(n_elements: int = 200) -> ScenarioConfig:
    """Three local viscous dampings on the same interval (auxiliary system)"""
    L = standard_params().length
    ind = DampingProfile.indicator(L, OMEGA[0], OMEGA[1], 1.0)
    return _cfg("viscous_local", DampingSpec(ind, ind, ind, DampingModel.VISCOUS), n_elements)


def undamped(n_elements: int = 100) -> ScenarioConfig:
    return _cfg("undamped", DampingSpec.undamped(standard_params().length), n_elements)


def witness_fixture(n_elements: int = 400) -> ScenarioConfig:
    """DNND with D1 = 0 and D2 = D3 = 1; ell = 1/2 keeps L = pi away from n*pi/ell"""
    params = standard_params(length=math.pi, ell=0.5)
    z = DampingProfile.zero(params.length)
    one = DampingProfile.global_(params.length, 1.0)
    return _cfg("witness_dnnd", DampingSpec(z, one, one), n_elements,
                BoundaryCondition.DIRICHLET_NEUMANN_NEUMANN, params)


def table_fixtures(n_elements: int = 200) -> List[Tuple[str, ScenarioConfig, Regime]]:
    """(row label, scenario, regime claimed by the table) in table order"""
    return [
        ("global L-inf, D_i >= d0 on (0,L)", global_kv(n_elements), Regime.ANALYTIC),
        ("W^{1,inf}, D_i >= d0 on omega", smooth_local_kv(n_elements), Regime.EXPONENTIAL),
        ("L-inf, common support omega", nonsmooth_local_kv(n_elements), Regime.POLYNOMIAL_ONE_OVER_T),
        ("D1 = D3 = 0, D2 >= d0 on omega", single_local_kv(n_elements), Regime.POLYNOMIAL_ONE_OVER_SQRT_T),
    ]


FIXTURES: Dict[str, object] = {
    "row1_global_kv": global_kv,
    "row2_smooth_local_kv": smooth_local_kv,
    "row3_nonsmooth_local_kv": nonsmooth_local_kv,
    "row4_single_local_kv": single_local_kv,
    "viscous_local": viscous_local,
    "undamped": undamped,
    "witness_dnnd": witness_fixture,
}
