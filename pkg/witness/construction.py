"""
Closed-form lack-of-exponential-stability witness for DNND boundary conditions

Damping D1 = 0, D2 = D3 = 1; forcing f4 = cos(n pi x / L) in the psi-velocity slot and
ansatz  phi = A sin(kx),  psi = B cos(kx),  w = C cos(kx)  with k = n pi / L and
lambda_n = n pi sqrt(rho2 k2) / (L rho2), so that k2 k^2 = rho2 lambda_n^2.
Every integral is sin^2 / cos^2 over [0, L], hence no mesh.
"""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from model.params import BeamParameters
from utils.errors import NumericalError, UsageError

Coefficients = Tuple[complex, complex, complex]

SINGULAR_CONDITION = 1e14


@dataclass(frozen=True)
class WitnessSample:
    n: int
    lambda_n: float
    coeffs: Coefficients
    coeffs_asymptotic: Coefficients
    norm_V: float
    norm_residual: float
    solve_residual: float
    condition: float


def witness_frequency(n: int, params: BeamParameters) -> float:
    if n < 1:
        raise UsageError(f"witness mode index must be >= 1 (got {n})")
    return n * math.pi * math.sqrt(params.rho2 * params.k2) / (params.length * params.rho2)


def wavenumber(n: int, params: BeamParameters) -> float:
    return n * math.pi / params.length


def witness_system(n: int, params: BeamParameters) -> Tuple[np.ndarray, np.ndarray]:
    """3x3 complex matrix and right-hand side (0, rho2, 0) for (A, B, C)"""
    p = params
    lam = witness_frequency(n, p)
    k = wavenumber(n, p)
    ell = p.ell
    damped = p.k1 + p.k3 + 1j * lam
    matrix = np.array([
        [k ** 2 * p.k1 - lam ** 2 * p.rho1 + (p.k3 + 1j * lam) * ell ** 2, p.k1 * k, damped * ell * k],
        [p.k1 * k, p.k1, ell * p.k1],
        [damped * ell * k, ell * p.k1, p.k3 * k ** 2 - lam ** 2 * p.rho1 + ell ** 2 * p.k1],
    ], dtype=complex)
    rhs = np.array([0.0, p.rho2, 0.0], dtype=complex)
    return matrix, rhs


def witness_coefficients_exact(n: int, params: BeamParameters) -> Tuple[Coefficients, float, float]:
    """(A, B, C) by partial-pivoting LU; returns (coeffs, relative residual, condition number)"""
    matrix, rhs = witness_system(n, params)
    condition = float(np.linalg.cond(matrix))
    lu, piv = scipy.linalg.lu_factor(matrix, check_finite=True)
    det = abs(np.prod(np.diag(lu)))
    if det == 0.0 or not math.isfinite(condition) or condition > SINGULAR_CONDITION:
        raise NumericalError(f"witness system singular for n={n} (|det|={det:.3e}, cond={condition:.3e})")
    x = scipy.linalg.lu_solve((lu, piv), rhs)
    r = matrix @ x - rhs
    scale = np.abs(matrix).sum(axis=1).max() * np.abs(x).max() + np.abs(rhs).max()
    residual = float(np.abs(r).max() / scale)
    return (complex(x[0]), complex(x[1]), complex(x[2])), residual, condition


def witness_coefficients_asymptotic(n: int, params: BeamParameters) -> Coefficients:
    """Leading-order (A, B, C) as n grows"""
    if n < 1:
        raise UsageError(f"witness mode index must be >= 1 (got {n})")
    p = params
    ell2 = p.ell ** 2
    den = (-p.k3 * p.rho1 + ell2) * p.rho2 + p.k2 * p.rho1 ** 2
    if den == 0.0 or p.k1 == 0.0:
        raise NumericalError(
            f"asymptotic witness coefficients undefined: (ell^2 - k3 rho1) rho2 + k2 rho1^2 = {den:.3e}"
        )
    a = (p.k2 * p.rho1 - p.rho2 * p.k3) * p.rho2 ** 2 * p.length / (math.pi * den * p.k2 * n)
    b = p.rho2 * (p.k1 * p.k3 * p.rho2 ** 2 + ((-p.k1 - p.k3) * p.rho1 + ell2) * p.k2 * p.rho2
                  + p.k2 ** 2 * p.rho1 ** 2) / (p.k1 * den * p.k2)
    c = 1j * p.ell * p.rho2 ** 2 * p.length * math.sqrt(p.rho2 * p.k2) / (math.pi * den * p.k2 * n)
    return complex(a), complex(b), complex(c)


def witness_norms(n: int, params: BeamParameters, coeffs: Optional[Coefficients] = None) -> Tuple[float, float]:
    """Energy norms of V_n and of (i lambda_n - A) V_n

    V_n = (phi, i lam phi, psi, i lam psi, w, i lam w). The residual keeps only the
    psi-velocity slot  rho2 f4 - i lam D2 psi_xx  and the w-velocity slot  i lam D3 w_xx,
    weighted by rho2 and rho1 as in the energy norm.
    """
    p = params
    if coeffs is None:
        coeffs, _, _ = witness_coefficients_exact(n, p)
    a, b, c = coeffs
    lam = witness_frequency(n, p)
    k = wavenumber(n, p)
    half = 0.5 * p.length

    kinetic = lam ** 2 * (p.rho1 * abs(a) ** 2 + p.rho2 * abs(b) ** 2 + p.rho1 * abs(c) ** 2)
    strain = (p.k1 * abs(k * a + b + p.ell * c) ** 2
              + p.k2 * k ** 2 * abs(b) ** 2
              + p.k3 * abs(k * c + p.ell * a) ** 2)
    norm_v = math.sqrt(half * (kinetic + strain))

    # psi_xx = -B k^2 cos, w_xx = -C k^2 cos
    slot4 = p.rho2 + 1j * lam * k ** 2 * b
    slot6 = -1j * lam * k ** 2 * c
    norm_res = math.sqrt(half * (p.rho2 * abs(slot4) ** 2 + p.rho1 * abs(slot6) ** 2))
    return norm_v, norm_res


def witness_sample(n: int, params: BeamParameters) -> WitnessSample:
    coeffs, residual, condition = witness_coefficients_exact(n, params)
    norm_v, norm_res = witness_norms(n, params, coeffs)
    return WitnessSample(
        n=n,
        lambda_n=witness_frequency(n, params),
        coeffs=coeffs,
        coeffs_asymptotic=witness_coefficients_asymptotic(n, params),
        norm_V=norm_v,
        norm_residual=norm_res,
        solve_residual=residual,
        condition=condition,
    )
