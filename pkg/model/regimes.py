"""
Stability regimes of the summary table and the rule that predicts them from the damping layout
"""
from enum import Enum
from typing import Optional

from utils.errors import UsageError
from .damping import DampingModel, DampingSpec, Smoothness, intersect_intervals


class StabilityKind(Enum):
    ANALYTIC = "analytic"
    EXPONENTIAL = "exponential"
    POLYNOMIAL = "polynomial"
    UNKNOWN = "unknown"


class Regime(Enum):
    """One row of the summary table, plus UNKNOWN when no row applies"""

    ANALYTIC = ("analytic", StabilityKind.ANALYTIC, -1.0, "analytic")
    EXPONENTIAL = ("exponential", StabilityKind.EXPONENTIAL, 0.0, "exp(-delta t)")
    POLYNOMIAL_ONE_OVER_T = ("polynomial_1/t", StabilityKind.POLYNOMIAL, 2.0, "1/t")
    POLYNOMIAL_ONE_OVER_SQRT_T = ("polynomial_1/sqrt(t)", StabilityKind.POLYNOMIAL, 4.0, "1/sqrt(t)")
    UNKNOWN = ("unknown", StabilityKind.UNKNOWN, None, "unknown")

    def __init__(self, label: str, kind: StabilityKind, growth: Optional[float], decay_law: str):
        self.label = label
        self.kind = kind
        # exponent of |lambda| bounding the resolvent norm along the imaginary axis
        self.growth_exponent = growth
        self.decay_law = decay_law


def _common_support(spec: DampingSpec):
    d1, d2, d3 = spec.profiles
    common = d1.support()
    for p in (d2, d3):
        common = intersect_intervals(common, p.support())
    return common


def expected_class(spec: DampingSpec, smoothness: Smoothness) -> Regime:
    """Summary-table prediction for Kelvin-Voigt damping"""
    if spec.model is not DampingModel.KELVIN_VOIGT:
        raise UsageError("the summary table covers Kelvin-Voigt damping only")

    d1, d2, d3 = spec.profiles
    if all(p.positive_everywhere() for p in spec.profiles):
        return Regime.ANALYTIC

    if _common_support(spec):
        if smoothness is Smoothness.LIPSCHITZ:
            return Regime.EXPONENTIAL
        return Regime.POLYNOMIAL_ONE_OVER_T

    # D2 is distinguished here: only the bending equation is damped
    if d1.is_zero and d3.is_zero and d2.support():
        return Regime.POLYNOMIAL_ONE_OVER_SQRT_T
    return Regime.UNKNOWN


def expected_regime(spec: DampingSpec) -> Regime:
    """expected_class for Kelvin-Voigt damping; three viscous dampings on a common interval are exponential"""
    if spec.model is DampingModel.VISCOUS:
        return Regime.EXPONENTIAL if _common_support(spec) else Regime.UNKNOWN
    return expected_class(spec, spec.declared_smoothness)
