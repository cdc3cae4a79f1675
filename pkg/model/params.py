"""
Physical constants of a curved (Bresse) beam
"""
import math
from dataclasses import dataclass, fields, replace
from typing import List, Tuple


@dataclass(frozen=True)
class BeamParameters:
    """rho1 = rho A, rho2 = rho I, k1 = k'GA, k2 = EI, k3 = EA, ell = 1/R, length = L"""

    rho1: float
    rho2: float
    k1: float
    k2: float
    k3: float
    ell: float
    length: float

    def violations(self) -> List[str]:
        """List every field that breaks positivity (ell may be zero only via timoshenko())"""
        problems = []
        for f in fields(self):
            value = getattr(self, f.name)
            if not math.isfinite(value):
                problems.append(f"beam.{f.name}: must be finite (got {value})")
            elif f.name == "ell" and value == 0.0:
                continue
            elif value <= 0.0:
                problems.append(f"beam.{f.name}: must be strictly positive (got {value})")
        return problems

    @property
    def speeds(self) -> Tuple[float, float, float]:
        return wave_speeds(self)


def wave_speeds(params: BeamParameters) -> Tuple[float, float, float]:
    """Shear, bending and axial wave speeds (c1, c2, c3)"""
    c1 = math.sqrt(params.k1 / params.rho1)
    c2 = math.sqrt(params.k2 / params.rho2)
    c3 = math.sqrt(params.k3 / params.rho1)
    return c1, c2, c3


def timoshenko(params: BeamParameters) -> BeamParameters:
    """Straight-beam limit: curvature radius to infinity, ell = 0"""
    return replace(params, ell=0.0)
