# Finite-element discretization package

from .mesh import Mesh, build_mesh, resolved_frequency_cap, default_time_step
from .state import StateLayout, StateVector, build_layout
from .assembly import DiscreteOperator, assemble
from .functionals import energy, dissipation_rate, apply_generator, norm_equivalence_constants, g_inner
from .initial import Modal, RandomHighFreq, FromFile, sample_initial, undamped_modes

__all__ = [
    'Mesh',
    'build_mesh',
    'resolved_frequency_cap',
    'default_time_step',
    'StateLayout',
    'StateVector',
    'build_layout',
    'DiscreteOperator',
    'assemble',
    'energy',
    'dissipation_rate',
    'apply_generator',
    'norm_equivalence_constants',
    'g_inner',
    'Modal',
    'RandomHighFreq',
    'FromFile',
    'sample_initial',
    'undamped_modes',
]
