# Physical model package

from .params import BeamParameters, wave_speeds, timoshenko
from .damping import DampingProfile, DampingModel, DampingSpec, Smoothness, Piece, eval_damping
from .scenario import BoundaryCondition, ScenarioConfig, RunSettings, validate_scenario, load_scenario, satisfies_ssc
from .regimes import Regime, StabilityKind, expected_class, expected_regime

__all__ = [
    'BeamParameters',
    'wave_speeds',
    'timoshenko',
    'DampingProfile',
    'DampingModel',
    'DampingSpec',
    'Smoothness',
    'Piece',
    'eval_damping',
    'BoundaryCondition',
    'ScenarioConfig',
    'RunSettings',
    'validate_scenario',
    'load_scenario',
    'satisfies_ssc',
    'Regime',
    'StabilityKind',
    'expected_class',
    'expected_regime',
]
