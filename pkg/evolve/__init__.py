# Time integration package

from .integrator import step_midpoint, simulate
from .trace import EnergyTrace

__all__ = ['step_midpoint', 'simulate', 'EnergyTrace']
