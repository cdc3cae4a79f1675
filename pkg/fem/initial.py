"""
Initial states: undamped eigenmodes, reproducible high-frequency noise, or nodal fields from disk
"""
import logging
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import eigsh

from config.settings import SWEEP_CONFIG
from utils.errors import NumericalError, UsageError
from .assembly import DiscreteOperator
from .functionals import energy
from .mesh import resolved_frequency_cap
from .state import STATE_BLOCKS, StateVector

logger = logging.getLogger('numerics.fem')


@dataclass(frozen=True)
class Modal:
    m: int


@dataclass(frozen=True)
class RandomHighFreq:
    seed: int


@dataclass(frozen=True)
class FromFile:
    path: str


InitialKind = Union[Modal, RandomHighFreq, FromFile]


def undamped_modes(op: DiscreteOperator, count: int) -> Tuple[np.ndarray, np.ndarray]:
    """Lowest `count` solutions of K u = omega^2 M u; returns (omega, modes with u^T M u = 1)"""
    n = op.n_dof
    if not 1 <= count <= n:
        raise UsageError(f"mode count {count} outside 1..{n}")
    if n <= SWEEP_CONFIG["dense_eigh_below"] or count >= n - 1:
        w2, modes = scipy.linalg.eigh(op.K.toarray(), op.M.toarray(), subset_by_index=[0, count - 1])
    else:
        w2, modes = eigsh(op.K, k=count, M=op.M, sigma=0.0, which='LM')
        order = np.argsort(w2)
        w2, modes = w2[order], modes[:, order]
    # fix the sign so results are reproducible across eigensolver paths
    for j in range(modes.shape[1]):
        pivot = np.argmax(np.abs(modes[:, j]))
        if modes[pivot, j] < 0:
            modes[:, j] = -modes[:, j]
    return np.sqrt(np.maximum(w2, 0.0)), modes


def sample_initial(op: DiscreteOperator, kind: InitialKind) -> StateVector:
    """Unit-energy initial state of the requested kind"""
    if isinstance(kind, Modal):
        state = _modal(op, kind.m)
    elif isinstance(kind, RandomHighFreq):
        state = _random_high_frequency(op, kind.seed)
    elif isinstance(kind, FromFile):
        state = _from_file(op, kind.path)
    else:
        raise UsageError(f"unknown initial-state kind {kind!r}")

    e = energy(op, state)
    if not e > 0.0:
        raise NumericalError("initial state has zero energy")
    return state.scaled(1.0 / np.sqrt(e))


def _modal(op: DiscreteOperator, m: int) -> StateVector:
    if m < 1 or m > op.n_dof:
        raise UsageError(f"mode index {m} exceeds the {op.n_dof} available modes")
    omega, modes = undamped_modes(op, m)
    u = modes[:, m - 1]
    residual = np.linalg.norm(op.K @ u - omega[-1] ** 2 * (op.M @ u)) / max(np.linalg.norm(op.K @ u), 1e-300)
    logger.info(f"Mode {m}: omega={omega[-1]:.6g}, relative residual {residual:.2e}")
    return StateVector(u.copy(), np.zeros_like(u), op.layout)


def _random_high_frequency(op: DiscreteOperator, seed: int) -> StateVector:
    """Random combination of the modes in the upper half of the resolved band"""
    cap = resolved_frequency_cap(op.cfg.params, op.cfg.n_elements)
    count = min(op.n_dof, max(8, int(2 * op.n_dof * 0.25)))
    omega, modes = undamped_modes(op, count)
    resolved = int(np.searchsorted(omega, cap, side='right'))
    resolved = max(resolved, 2)
    lo = resolved // 2
    rng = np.random.default_rng(seed)
    a = rng.standard_normal(resolved - lo)
    b = rng.standard_normal(resolved - lo)
    block = modes[:, lo:resolved]
    # velocities scaled by omega so both halves carry comparable energy
    u = block @ a
    v = block @ (b * omega[lo:resolved])
    return StateVector(u, v, op.layout)


def _from_file(op: DiscreteOperator, path: str) -> StateVector:
    """.npz archive with nodal arrays phi, phi_t, psi, psi_t, w, w_t"""
    try:
        archive = np.load(path)
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot read initial state {path}: {e}")
    missing = [k for k in STATE_BLOCKS if k not in archive]
    if missing:
        raise UsageError(f"{path}: missing arrays {', '.join(missing)}")
    n_nodes = op.mesh.n_nodes
    fields = {}
    for k in STATE_BLOCKS:
        values = np.asarray(archive[k], dtype=float)
        if values.shape != (n_nodes,):
            raise UsageError(f"{path}: array {k} has shape {values.shape}, mesh has {n_nodes} nodes")
        fields[k] = values
    return StateVector.from_fields(op.layout, fields)
