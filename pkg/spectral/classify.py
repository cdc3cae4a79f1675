"""
Stability-type classification from the growth of the resolvent norm along the imaginary axis
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from config.settings import SWEEP_CONFIG
from model.regimes import Regime, StabilityKind
from utils.errors import InsufficientDataError
from utils.regression import loglog_fit
from .resolvent import ResolventSample

logger = logging.getLogger('numerics.spectral')


@dataclass(frozen=True)
class StabilityClass:
    kind: StabilityKind
    growth_exponent: Optional[float]   # l for the polynomial class
    slope: float
    r2: float
    window: Tuple[float, float]
    n_fit: int

    @property
    def predicted_decay(self) -> str:
        if self.kind is StabilityKind.ANALYTIC:
            return "analytic"
        if self.kind is StabilityKind.EXPONENTIAL:
            return "exp(-delta t)"
        if self.kind is StabilityKind.POLYNOMIAL:
            return f"t^(-{2.0 / self.growth_exponent:.3g})"
        return "unknown"

    @property
    def decay_exponent(self) -> Optional[float]:
        """2/l, the energy decay exponent of the polynomial class"""
        if self.kind is StabilityKind.POLYNOMIAL:
            return 2.0 / self.growth_exponent
        return None

    def matches(self, regime: Regime) -> bool:
        return self.kind is regime.kind


def classify_slope(slope: float) -> StabilityKind:
    if slope <= SWEEP_CONFIG["analytic_slope"]:
        return StabilityKind.ANALYTIC
    if abs(slope) <= SWEEP_CONFIG["exponential_band"]:
        return StabilityKind.EXPONENTIAL
    if slope >= SWEEP_CONFIG["polynomial_slope"]:
        return StabilityKind.POLYNOMIAL
    return StabilityKind.UNKNOWN


def classify_decay(sweep: Sequence[ResolventSample]) -> StabilityClass:
    """Slope of log ||R(i lambda)|| against log lambda over the top decade of the sweep"""
    lam = np.array([s.lam for s in sweep], dtype=float)
    norm = np.array([s.norm for s in sweep], dtype=float)
    keep = lam > 0.0
    lam, norm = lam[keep], norm[keep]

    if lam.size < SWEEP_CONFIG["min_samples"]:
        raise InsufficientDataError(
            f"classification needs at least {SWEEP_CONFIG['min_samples']} positive-frequency samples, got {lam.size}"
        )
    decades = math.log10(lam.max() / lam.min())
    if decades < SWEEP_CONFIG["min_decades"]:
        raise InsufficientDataError(
            f"sweep spans {decades:.2f} decades, classification needs {SWEEP_CONFIG['min_decades']}"
        )

    top = lam.max()
    window = lam >= top / 10.0
    if np.count_nonzero(window) < 3:
        raise InsufficientDataError("fewer than three samples in the top decade")
    fit = loglog_fit(lam[window], norm[window])

    kind = classify_slope(fit.slope)
    exponent = fit.slope if kind is StabilityKind.POLYNOMIAL else None
    result = StabilityClass(kind, exponent, fit.slope, fit.r2, (float(lam[window].min()), float(top)),
                            int(np.count_nonzero(window)))
    logger.info(f"Classified sweep: slope={fit.slope:.4f} (R2={fit.r2:.4f}) -> {kind.value}")
    return result


def continuum_growth_bound(regime: Regime) -> Optional[float]:
    """Exponent l with ||(i lambda - A)^-1|| = O(|lambda|^l) for the continuum regime"""
    return regime.growth_exponent
