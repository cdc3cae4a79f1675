"""
Energy, dissipation, generator action and norm-equivalence constants of an assembled operator
"""
from typing import Tuple

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import eigsh

from config.settings import SWEEP_CONFIG
from utils.errors import NumericalError
from .assembly import DiscreteOperator
from .state import StateVector


def _check(op: DiscreteOperator, s: StateVector) -> None:
    n = op.n_dof
    if s.u.shape != (n,) or s.v.shape != (n,):
        raise ValueError(f"state blocks have shapes {s.u.shape}/{s.v.shape}, operator expects ({n},)")


def energy(op: DiscreteOperator, s: StateVector) -> float:
    """E = 1/2 (v^T M v + u^T K u)"""
    _check(op, s)
    return 0.5 * float(np.real(np.vdot(s.v, op.M @ s.v) + np.vdot(s.u, op.K @ s.u)))


def dissipation_rate(op: DiscreteOperator, s: StateVector) -> float:
    """D = v^T C v, the discrete -dE/dt"""
    _check(op, s)
    return float(np.real(np.vdot(s.v, op.C @ s.v)))


def g_inner(op: DiscreteOperator, x: np.ndarray, y: np.ndarray) -> complex:
    """Energy inner product <x, y>_G = x^H G y on first-order arrays"""
    return complex(np.vdot(x, op.G @ y))


def apply_generator(op: DiscreteOperator, s: StateVector) -> StateVector:
    """A_h (u, v) = (v, M^-1 (-K u - C v))"""
    _check(op, s)
    return StateVector(s.v.copy(), op.solve_mass(-(op.K @ s.u) - op.C @ s.v), s.layout)


def norm_equivalence_constants(op: DiscreteOperator) -> Tuple[float, float]:
    """(c0_h, c1_h): extreme Rayleigh quotients of K against the H1-seminorm Gram"""
    n = op.n_dof
    try:
        if n <= SWEEP_CONFIG["dense_eigh_below"]:
            values = scipy.linalg.eigh(op.K.toarray(), op.S.toarray(), eigvals_only=True)
            c1, c0 = float(values[0]), float(values[-1])
        else:
            c0 = float(eigsh(op.K, k=1, M=op.S, which='LA', return_eigenvectors=False)[0])
            c1 = float(eigsh(op.K, k=1, M=op.S, sigma=0.0, which='LM', return_eigenvectors=False)[0])
    except (RuntimeError, np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise NumericalError(f"seminorm Gram singular on the constrained space ({e})")
    if not (c1 > 0.0 and c0 > 0.0):
        raise NumericalError(f"norm-equivalence constants not positive: c0={c0}, c1={c1}")
    return c0, c1
