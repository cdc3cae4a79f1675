"""
Constrained state layout and state vectors
Reduced coordinates carry the boundary conditions; states expand back to nodal fields
"""
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np
import scipy.sparse as sp

from model.scenario import BoundaryCondition
from .mesh import Mesh

FIELDS = ("phi", "psi", "w")
STATE_BLOCKS = ("phi", "phi_t", "psi", "psi_t", "w", "w_t")


@dataclass(frozen=True, eq=False)
class FieldConstraint:
    """How one displacement field maps between nodal values and reduced coordinates"""

    name: str
    expand: sp.csr_matrix            # n_nodes x n_reduced
    weights: np.ndarray              # node weights m_i
    mean_zero: bool

    @property
    def size(self) -> int:
        return self.expand.shape[1]

    def project(self, nodal: np.ndarray) -> np.ndarray:
        """Subtract the field mean (mean-zero fields only); idempotent"""
        nodal = np.asarray(nodal)
        if not self.mean_zero:
            return nodal
        return nodal - (self.weights @ nodal) / self.weights.sum()

    def restrict(self, nodal: np.ndarray) -> np.ndarray:
        """Reduced coordinates of a nodal field, after enforcing the constraint"""
        nodal = self.project(nodal)
        if self.mean_zero:
            return nodal[:-1].copy()
        return nodal[1:-1].copy()


@dataclass(frozen=True, eq=False)
class StateLayout:
    bc: BoundaryCondition
    mesh: Mesh
    constraints: Tuple[FieldConstraint, FieldConstraint, FieldConstraint]

    @property
    def n_dof(self) -> int:
        """Displacement dofs; the first-order state has twice as many"""
        return sum(c.size for c in self.constraints)

    @property
    def offsets(self) -> Tuple[int, int, int, int]:
        sizes = [c.size for c in self.constraints]
        return (0, sizes[0], sizes[0] + sizes[1], sum(sizes))

    def block(self, field: str) -> slice:
        i = FIELDS.index(field)
        o = self.offsets
        return slice(o[i], o[i + 1])

    def expand_matrix(self) -> sp.csr_matrix:
        """3 n_nodes x n_dof map from reduced coordinates to nodal (phi, psi, w)"""
        return sp.block_diag([c.expand for c in self.constraints], format='csr')

    def expand(self, reduced: np.ndarray) -> Dict[str, np.ndarray]:
        return {c.name: c.expand @ reduced[self.block(c.name)] for c in self.constraints}

    def restrict(self, nodal: Dict[str, np.ndarray]) -> np.ndarray:
        return np.concatenate([c.restrict(nodal[c.name]) for c in self.constraints])

    def means(self, reduced: np.ndarray) -> Dict[str, float]:
        """Exact integrals of the expanded P1 fields"""
        weights = self.mesh.node_weights()
        return {name: float(weights @ values) for name, values in self.expand(reduced).items()}


def build_layout(mesh: Mesh, bc: BoundaryCondition) -> StateLayout:
    weights = mesh.node_weights()
    dirichlet = _dirichlet_expand(mesh.n_nodes)
    if bc is BoundaryCondition.FULL_DIRICHLET:
        constraints = tuple(FieldConstraint(f, dirichlet, weights, False) for f in FIELDS)
    else:
        mean_zero = _mean_zero_expand(weights)
        constraints = (
            FieldConstraint("phi", dirichlet, weights, False),
            FieldConstraint("psi", mean_zero, weights, True),
            FieldConstraint("w", mean_zero, weights, True),
        )
    return StateLayout(bc, mesh, constraints)


def _dirichlet_expand(n_nodes: int) -> sp.csr_matrix:
    rows = np.arange(1, n_nodes - 1)
    cols = np.arange(n_nodes - 2)
    return sp.csr_matrix((np.ones(n_nodes - 2), (rows, cols)), shape=(n_nodes, n_nodes - 2))


def _mean_zero_expand(weights: np.ndarray) -> sp.csr_matrix:
    """Last node eliminated through m . u = 0"""
    n = len(weights)
    top = sp.identity(n - 1, format='csr')
    last = sp.csr_matrix(-weights[:-1] / weights[-1])
    return sp.vstack([top, last], format='csr')


@dataclass(frozen=True, eq=False)
class StateVector:
    """First-order state (u, v) in reduced coordinates"""

    u: np.ndarray
    v: np.ndarray
    layout: StateLayout

    @classmethod
    def zeros(cls, layout: StateLayout, dtype=float) -> "StateVector":
        return cls(np.zeros(layout.n_dof, dtype), np.zeros(layout.n_dof, dtype), layout)

    @classmethod
    def from_array(cls, x: np.ndarray, layout: StateLayout) -> "StateVector":
        n = layout.n_dof
        if x.shape != (2 * n,):
            raise ValueError(f"state array has shape {x.shape}, expected ({2 * n},)")
        return cls(x[:n].copy(), x[n:].copy(), layout)

    @classmethod
    def from_fields(cls, layout: StateLayout, fields: Dict[str, np.ndarray]) -> "StateVector":
        """Six nodal blocks (phi, phi_t, psi, psi_t, w, w_t) -> constrained state"""
        u = layout.restrict({f: fields[f] for f in FIELDS})
        v = layout.restrict({f: fields[f + "_t"] for f in FIELDS})
        return cls(u, v, layout)

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.u, self.v])

    def fields(self) -> Dict[str, np.ndarray]:
        disp = self.layout.expand(self.u)
        vel = self.layout.expand(self.v)
        return {
            "phi": disp["phi"], "phi_t": vel["phi"],
            "psi": disp["psi"], "psi_t": vel["psi"],
            "w": disp["w"], "w_t": vel["w"],
        }

    def scaled(self, alpha: float) -> "StateVector":
        return StateVector(alpha * self.u, alpha * self.v, self.layout)
