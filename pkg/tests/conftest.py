"""
Shared fixtures, brute-force dense oracles and CSV readers
"""
import csv

import numpy as np
import pytest

from fem.assembly import assemble
from model import fixtures
from model.damping import DampingProfile, DampingSpec
from model.params import BeamParameters
from model.scenario import BoundaryCondition, RunSettings, ScenarioConfig


def make_cfg(params=None, damping=None, n_elements=8, bc=BoundaryCondition.FULL_DIRICHLET, name="test"):
    params = params or fixtures.standard_params()
    damping = damping or DampingSpec.undamped(params.length)
    return ScenarioConfig(params, damping, bc, RunSettings(n_elements=n_elements), name)


def global_damping(length, d1=1.0, d2=1.0, d3=1.0):
    return DampingSpec(DampingProfile.global_(length, d1), DampingProfile.global_(length, d2),
                       DampingProfile.global_(length, d3))


@pytest.fixture
def standard():
    return fixtures.standard_params()


@pytest.fixture
def small_global_op():
    return assemble(fixtures.global_kv(8))


@pytest.fixture
def small_undamped_op():
    return assemble(fixtures.undamped(8))


@pytest.fixture
def small_local_op():
    return assemble(fixtures.nonsmooth_local_kv(10))


# ---- dense oracles ----------------------------------------------------------

def _element_blocks(h):
    DD = np.array([[1.0, -1.0], [-1.0, 1.0]]) / h
    NN = np.array([[2.0, 1.0], [1.0, 2.0]]) * h / 6.0
    DN = np.array([[-0.5, -0.5], [0.5, 0.5]])   # integral of N_i' N_j
    return DD, NN, DN


def dense_matrices(p: BeamParameters, nodes, damping=(1.0, 1.0, 1.0)):
    """Full nodal (phi, psi, w) stiffness, mass and Kelvin-Voigt damping for constant coefficients"""
    n = len(nodes)

    def strain(c1, c2, c3):
        A = np.zeros((3 * n, 3 * n))
        ell = p.ell
        for e in range(n - 1):
            DD, NN, DN = _element_blocks(nodes[e + 1] - nodes[e])
            ND = DN.T
            idx = [e, e + 1]
            blocks = {
                (0, 0): c1 * DD + c3 * ell ** 2 * NN,
                (0, 1): c1 * DN,
                (0, 2): c1 * ell * DN - c3 * ell * ND,
                (1, 0): c1 * ND,
                (1, 1): c1 * NN + c2 * DD,
                (1, 2): c1 * ell * NN,
                (2, 0): c1 * ell * ND - c3 * ell * DN,
                (2, 1): c1 * ell * NN,
                (2, 2): c1 * ell ** 2 * NN + c3 * DD,
            }
            for (a, b), block in blocks.items():
                for i in range(2):
                    for j in range(2):
                        A[a * n + idx[i], b * n + idx[j]] += block[i, j]
        return A

    M = np.zeros((3 * n, 3 * n))
    for e in range(n - 1):
        _, NN, _ = _element_blocks(nodes[e + 1] - nodes[e])
        for a, rho in enumerate((p.rho1, p.rho2, p.rho1)):
            for i in range(2):
                for j in range(2):
                    M[a * n + e + i, a * n + e + j] += rho * NN[i, j]
    return strain(p.k1, p.k2, p.k3), M, strain(*damping)


def dirichlet_reduce(A, n):
    """Drop the end nodes of every field"""
    keep = [a * n + i for a in range(3) for i in range(1, n - 1)]
    return A[np.ix_(keep, keep)]


def dense_generator(K, M, C):
    n = K.shape[0]
    top = np.hstack([np.zeros((n, n)), np.eye(n)])
    bottom = np.hstack([-np.linalg.solve(M, K), -np.linalg.solve(M, C)])
    return np.vstack([top, bottom])


def dense_resolvent_norm(K, M, C, lam):
    """||(i lam - A)^-1|| in the G = blockdiag(K, M) norm via Cholesky and a dense SVD"""
    A = dense_generator(K, M, C)
    G = np.block([[K, np.zeros_like(K)], [np.zeros_like(M), M]])
    L = np.linalg.cholesky(G)
    R = np.linalg.inv(1j * lam * np.eye(A.shape[0]) - A)
    return np.linalg.norm(L.T @ R @ np.linalg.inv(L.T), 2)


# ---- output readers ---------------------------------------------------------

def read_csv_rows(path):
    """Data rows of a lab CSV as strings (header and '#' comments skipped)"""
    with open(path, encoding="utf-8", newline="") as handle:
        rows = [r for r in csv.reader(handle) if r and not r[0].startswith("#")]
    return rows[1:]


def read_csv(path):
    """Numeric data rows of a lab CSV"""
    return [[float(v) for v in row] for row in read_csv_rows(path)]
