# Spectrum, resolvent sweeps and stability classification

from .eigen import eigenvalues, spectral_abscissa
from .resolvent import (
    ResolventSample,
    Clearance,
    resolvent_norm,
    resolvent_sweep,
    resolvent_envelope,
    band_modes,
    imaginary_axis_clearance,
    sweep_grid,
    check_cap,
)
from .classify import StabilityClass, classify_decay, classify_slope, continuum_growth_bound

__all__ = [
    'eigenvalues',
    'spectral_abscissa',
    'ResolventSample',
    'Clearance',
    'resolvent_norm',
    'resolvent_sweep',
    'resolvent_envelope',
    'band_modes',
    'imaginary_axis_clearance',
    'sweep_grid',
    'check_cap',
    'StabilityClass',
    'classify_decay',
    'classify_slope',
    'continuum_growth_bound',
]
