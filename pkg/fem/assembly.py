"""
P1 finite-element assembly of the Bresse system

Strain form  a(U, V) = int k1 e1(U) e1(V) + k2 e2(U) e2(V) + k3 e3(U) e3(V) dx with
    e1 = phi_x + psi + ell w,   e2 = psi_x,   e3 = w_x - ell phi.
Kelvin-Voigt damping uses the same form with (D1, D2, D3) in place of (k1, k2, k3);
viscous damping weights the (phi, psi, w) mass blocks by (D1, D2, D3).
First-order generator:  u' = v,  M v' = -K u - C v.
"""
import logging
from dataclasses import dataclass
from typing import Callable, List, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh, splu

from config.settings import SWEEP_CONFIG
from model.damping import DampingModel, DampingProfile
from model.scenario import ScenarioConfig, validate_scenario
from utils.errors import NumericalError
from .mesh import Mesh, build_mesh
from .state import StateLayout, build_layout

logger = logging.getLogger('numerics.fem')

# Coefficient evaluated at quadrature points, shape (n_el, n_q) -> (n_el, n_q)
Coefficient = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class DiscreteOperator:
    """Assembled matrices on reduced coordinates; immutable after assembly"""

    cfg: ScenarioConfig
    mesh: Mesh
    layout: StateLayout
    M: sp.csc_matrix     # kinetic Gram
    K: sp.csc_matrix     # elastic stiffness
    C: sp.csc_matrix     # damping
    S: sp.csc_matrix     # H1-seminorm Gram
    G: sp.csc_matrix     # energy Gram blockdiag(K, M) on (u, v)
    mass_lu: object      # splu factorization of M

    @property
    def n_dof(self) -> int:
        return self.layout.n_dof

    @property
    def state_size(self) -> int:
        return 2 * self.layout.n_dof

    @property
    def is_conservative(self) -> bool:
        return self.C.count_nonzero() == 0

    def solve_mass(self, rhs: np.ndarray) -> np.ndarray:
        if np.iscomplexobj(rhs):
            return self.mass_lu.solve(rhs.real) + 1j * self.mass_lu.solve(rhs.imag)
        return self.mass_lu.solve(rhs)

    def pencil(self):
        """(A, B) with B x' = A x: A = [[0, I], [-K, -C]], B = blockdiag(I, M)"""
        n = self.n_dof
        eye = sp.identity(n, format='csc')
        A = sp.bmat([[None, eye], [-self.K, -self.C]], format='csc')
        B = sp.block_diag([eye, self.M], format='csc')
        return A, B

    def generator_dense(self) -> np.ndarray:
        """Dense A_h = [[0, I], [-M^-1 K, -M^-1 C]] for small meshes"""
        n = self.n_dof
        Minv_K = self.solve_mass(self.K.toarray())
        Minv_C = self.solve_mass(self.C.toarray())
        top = np.hstack([np.zeros((n, n)), np.eye(n)])
        bottom = np.hstack([-Minv_K, -Minv_C])
        return np.vstack([top, bottom])


def assemble(cfg: ScenarioConfig) -> DiscreteOperator:
    """Assemble M, K, C on the constrained space of cfg's boundary condition"""
    cfg = validate_scenario(cfg)
    p = cfg.params
    mesh = build_mesh(p.length, cfg.n_elements, cfg.damping.breakpoints())
    layout = build_layout(mesh, cfg.bc)
    E = layout.expand_matrix()

    n_q = _quadrature_points(max(prof.max_degree for prof in cfg.damping.profiles))
    const = _constant

    K_full = assemble_strain_form(mesh, p.ell, [const(p.k1), const(p.k2), const(p.k3)], n_q)
    M_full = assemble_mass_form(mesh, [const(p.rho1), const(p.rho2), const(p.rho1)], n_q)
    S_full = assemble_seminorm_form(mesh, n_q)

    profile_coeffs = [_profile_coefficient(prof) for prof in cfg.damping.profiles]
    if cfg.damping.is_zero:
        C_full = sp.csr_matrix(K_full.shape)
    elif cfg.damping.model is DampingModel.KELVIN_VOIGT:
        C_full = assemble_strain_form(mesh, p.ell, profile_coeffs, n_q)
    else:
        C_full = assemble_mass_form(mesh, profile_coeffs, n_q)

    reduce = lambda A: (E.T @ A @ E).tocsc()
    M, S = reduce(M_full), reduce(S_full)
    # K and C share the structural pattern of the element connectivity, explicit zeros kept
    pattern = structural_pattern(mesh, E)
    K, C = on_pattern(reduce(K_full), pattern), on_pattern(reduce(C_full), pattern)

    _check_positive_definite(K, M, cfg)
    mass_lu = splu(M)
    G = sp.block_diag([K, M], format='csc')

    logger.info(
        f"Assembled '{cfg.name}': {mesh.n_nodes} nodes, {layout.n_dof} dofs, "
        f"bc={cfg.bc.value}, damping={cfg.damping.model.value}, nnz(K)={K.nnz}, nnz(C)={C.nnz}"
    )
    return DiscreteOperator(cfg, mesh, layout, M, K, C, S, G, mass_lu)


# ---- element kernels ------------------------------------------------------

def assemble_strain_form(mesh: Mesh, ell: float, coeffs: Sequence[Coefficient], n_q: int) -> sp.csr_matrix:
    """int c1 e1 e1' + c2 e2 e2' + c3 e3 e3' over the full nodal (phi, psi, w) space"""
    x, wq, N1, N2, he = _quadrature(mesh, n_q)
    d = np.broadcast_to((1.0 / he)[:, None], N1.shape)
    zero = np.zeros_like(N1)
    # local dofs: phi1, phi2, psi1, psi2, w1, w2
    B1 = np.stack([-d, d, N1, N2, ell * N1, ell * N2], axis=-1)
    B2 = np.stack([zero, zero, -d, d, zero, zero], axis=-1)
    B3 = np.stack([-ell * N1, -ell * N2, zero, zero, -d, d], axis=-1)
    return _scatter(mesh, _element_matrices([B1, B2, B3], coeffs, x, wq))


def assemble_mass_form(mesh: Mesh, coeffs: Sequence[Coefficient], n_q: int) -> sp.csr_matrix:
    """int c1 phi phi' + c2 psi psi' + c3 w w'"""
    x, wq, N1, N2, he = _quadrature(mesh, n_q)
    zero = np.zeros_like(N1)
    B_phi = np.stack([N1, N2, zero, zero, zero, zero], axis=-1)
    B_psi = np.stack([zero, zero, N1, N2, zero, zero], axis=-1)
    B_w = np.stack([zero, zero, zero, zero, N1, N2], axis=-1)
    return _scatter(mesh, _element_matrices([B_phi, B_psi, B_w], coeffs, x, wq))


def assemble_seminorm_form(mesh: Mesh, n_q: int) -> sp.csr_matrix:
    """int phi_x phi_x' + psi_x psi_x' + w_x w_x'"""
    x, wq, N1, N2, he = _quadrature(mesh, n_q)
    d = np.broadcast_to((1.0 / he)[:, None], N1.shape)
    zero = np.zeros_like(N1)
    rows = [
        np.stack([-d, d, zero, zero, zero, zero], axis=-1),
        np.stack([zero, zero, -d, d, zero, zero], axis=-1),
        np.stack([zero, zero, zero, zero, -d, d], axis=-1),
    ]
    one = _constant(1.0)
    return _scatter(mesh, _element_matrices(rows, [one, one, one], x, wq))


def _quadrature_points(coefficient_degree: int) -> int:
    """Gauss-Legendre points exact for coefficient x (P1 or P0) x (P1 or P0) integrands"""
    return (coefficient_degree + 2) // 2 + 1


def _quadrature(mesh: Mesh, n_q: int):
    xi, w = np.polynomial.legendre.leggauss(n_q)
    a = mesh.nodes[:-1][:, None]
    he = mesh.element_lengths
    x = a + 0.5 * (xi[None, :] + 1.0) * he[:, None]
    wq = 0.5 * w[None, :] * he[:, None]
    N1 = np.broadcast_to(0.5 * (1.0 - xi)[None, :], x.shape)
    N2 = np.broadcast_to(0.5 * (1.0 + xi)[None, :], x.shape)
    return x, wq, N1, N2, he


def _element_matrices(rows: List[np.ndarray], coeffs: Sequence[Coefficient], x, wq) -> np.ndarray:
    Ke = np.zeros((x.shape[0], 6, 6))
    for B, coeff in zip(rows, coeffs):
        c = coeff(x)
        if not np.any(c):
            continue
        Ke += np.einsum('eq,eqi,eqj->eij', c * wq, B, B)
    return Ke


def _scatter(mesh: Mesh, Ke: np.ndarray) -> sp.csr_matrix:
    n = mesh.n_nodes
    e = np.arange(mesh.n_nodes - 1)
    dofs = np.stack([e, e + 1, n + e, n + e + 1, 2 * n + e, 2 * n + e + 1], axis=-1)
    rows = np.repeat(dofs, 6, axis=1)
    cols = np.tile(dofs, (1, 6))
    return sp.coo_matrix((Ke.ravel(), (rows.ravel(), cols.ravel())), shape=(3 * n, 3 * n)).tocsr()


def structural_pattern(mesh: Mesh, E: sp.spmatrix) -> sp.csc_matrix:
    """Reduced-space pattern of a full 6x6 coupling per element"""
    connectivity = _scatter(mesh, np.ones((mesh.n_nodes - 1, 6, 6)))
    absE = abs(E)
    # all terms positive, so no entry cancels to a dropped zero
    pattern = (absE.T @ connectivity @ absE).tocsc()
    pattern.sort_indices()
    return pattern


def on_pattern(A: sp.spmatrix, pattern: sp.csc_matrix) -> sp.csc_matrix:
    """A stored on `pattern`'s structure with explicit zeros; A's nonzeros must lie inside it"""
    A = A.tocsc()
    cols = np.repeat(np.arange(pattern.shape[1]), np.diff(pattern.indptr))
    values = np.asarray(A[pattern.indices, cols], dtype=A.dtype).ravel()
    return sp.csc_matrix((values, pattern.indices.copy(), pattern.indptr.copy()), shape=pattern.shape)


def _constant(value: float) -> Coefficient:
    return lambda x: np.full(x.shape, float(value))


def _profile_coefficient(profile: DampingProfile) -> Coefficient:
    # quadrature points are element-interior, so the covering piece is unambiguous
    return lambda x: profile.values(x.ravel()).reshape(x.shape)


def _check_positive_definite(K: sp.csc_matrix, M: sp.csc_matrix, cfg: ScenarioConfig) -> None:
    n = K.shape[0]
    try:
        if n <= SWEEP_CONFIG["dense_eigh_below"]:
            lowest = scipy.linalg.eigh(K.toarray(), M.toarray(), eigvals_only=True, subset_by_index=[0, 0])[0]
        else:
            lowest = eigsh(K, k=1, M=M, sigma=0.0, which='LM', return_eigenvectors=False)[0]
    except (RuntimeError, np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise NumericalError(f"stiffness matrix singular on the constrained space ({e})")
    scale = abs(K.diagonal()).max()
    if not lowest > 1e-12 * scale:
        raise NumericalError(
            f"stiffness matrix not positive definite on the constrained space "
            f"(lowest generalized eigenvalue {lowest:.3e}); for DNND check L = n*pi/ell"
        )
