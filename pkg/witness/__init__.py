# Closed-form witness sequence for the DNND lack-of-exponential-stability argument

from .construction import (
    WitnessSample,
    witness_frequency,
    witness_system,
    witness_coefficients_exact,
    witness_coefficients_asymptotic,
    witness_norms,
    witness_sample,
)
from .series import WitnessReport, CrossCheck, FLAG_MESSAGE, check_witness_scenario, witness_series, cross_check

__all__ = [
    'WitnessSample',
    'witness_frequency',
    'witness_system',
    'witness_coefficients_exact',
    'witness_coefficients_asymptotic',
    'witness_norms',
    'witness_sample',
    'WitnessReport',
    'CrossCheck',
    'FLAG_MESSAGE',
    'check_witness_scenario',
    'witness_series',
    'cross_check',
]
