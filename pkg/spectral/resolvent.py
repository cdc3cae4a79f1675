"""
Energy-norm resolvent of the discrete generator along the imaginary axis

With G = blockdiag(K, M) and S(lambda) = G (i lambda - A_h) = [[i lambda K, -K], [K, i lambda M + C]],
the resolvent is R = S^-1 G and its G-norm squared is the largest eigenvalue of the
G-self-adjoint operator  Q = S^-H G S^-1 G.
"""
import functools
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence, LinearOperator, eigs, splu

from config.settings import SWEEP_CONFIG, THREADS_ENV
from fem.assembly import DiscreteOperator
from fem.initial import undamped_modes
from fem.mesh import resolved_frequency_cap
from model.params import wave_speeds
from utils.errors import FrequencyCapError, NumericalError, ResonanceError, UsageError
from .eigen import DENSE_LIMIT, eigenvalues

logger = logging.getLogger('numerics.spectral')


@dataclass(frozen=True)
class ResolventSample:
    lam: float
    norm: float          # ||(i lambda - A_h)^-1|| in the energy norm
    sigma_min: float     # 1 / norm
    method: str          # "dense" or "arnoldi"
    residual: float      # eigen-residual of the norm computation (0 for dense)


@dataclass(frozen=True)
class Clearance:
    value: float         # min over the grid of sigma_min(i lambda - A_h)
    lam: float           # minimizing lambda


def shifted_operator(op: DiscreteOperator, lam: float) -> sp.csc_matrix:
    """S(lambda) = G (i lambda - A_h)"""
    K, M, C = op.K, op.M, op.C
    return sp.bmat([[1j * lam * K, -K], [K, 1j * lam * M + C]], format='csc')


@functools.lru_cache(maxsize=8)
def _energy_factor(op: DiscreteOperator) -> np.ndarray:
    """Lower Cholesky factor of G, so that ||x||_G = ||L^T x||"""
    return scipy.linalg.cholesky(op.G.toarray(), lower=True)


def _dense_norm(op: DiscreteOperator, lam: float) -> Tuple[float, float]:
    L = _energy_factor(op)
    S = shifted_operator(op, lam).toarray()
    try:
        lu = scipy.linalg.lu_factor(S, check_finite=True)
    except (ValueError, scipy.linalg.LinAlgError) as e:
        raise ResonanceError(lam, str(e))
    if np.any(np.diag(lu[0]) == 0):
        raise ResonanceError(lam, "exactly singular shift")
    X = scipy.linalg.lu_solve(lu, L.astype(complex))
    sigma = scipy.linalg.svdvals(L.T @ X)
    return float(sigma[0]), 0.0


def _arnoldi_norm(op: DiscreteOperator, lam: float) -> Tuple[float, float]:
    try:
        lu = splu(shifted_operator(op, lam))
    except RuntimeError as e:
        raise ResonanceError(lam, str(e))
    G = op.G
    n = G.shape[0]

    def apply_q(x):
        y = lu.solve(G @ x)
        return lu.solve(np.asarray(G @ y, dtype=complex), trans='H')

    Q = LinearOperator((n, n), matvec=apply_q, dtype=complex)
    v0 = np.ones(n, dtype=complex)
    try:
        values, vectors = eigs(Q, k=1, which='LM', v0=v0, tol=SWEEP_CONFIG["arpack_tol"])
    except (ArpackNoConvergence, ArpackError) as e:
        raise NumericalError(f"resolvent norm iteration did not converge at lambda={lam}: {e}")
    nu = float(values[0].real)
    x = vectors[:, 0]
    gx = np.sqrt(abs(np.vdot(x, G @ x)))
    r = apply_q(x) - nu * x
    residual = float(np.sqrt(abs(np.vdot(r, G @ r))) / (abs(nu) * gx)) if nu > 0 else math.inf
    return math.sqrt(max(nu, 0.0)), residual


def resolvent_norm(op: DiscreteOperator, lam: float, method: Optional[str] = None) -> ResolventSample:
    """||(i lambda - A_h)^-1||_G; raises ResonanceError when i lambda is (numerically) an eigenvalue"""
    if method is None:
        method = "dense" if op.state_size <= SWEEP_CONFIG["dense_below"] else "arnoldi"
    if method == "dense":
        norm, residual = _dense_norm(op, lam)
    elif method == "arnoldi":
        norm, residual = _arnoldi_norm(op, lam)
    else:
        raise UsageError(f"unknown resolvent method {method!r}")

    if not math.isfinite(norm) or norm <= 0.0:
        raise ResonanceError(lam, f"resolvent norm {norm}")
    sigma_min = 1.0 / norm
    if sigma_min <= SWEEP_CONFIG["resonance_tol"] * max(1.0, abs(lam)):
        raise ResonanceError(lam, f"sigma_min={sigma_min:.3e}")
    return ResolventSample(float(lam), norm, sigma_min, method, residual)


def sweep_grid(lambda_min: float, lambda_max: float, n_samples: int, spacing: str = "log") -> np.ndarray:
    if spacing == "log":
        return np.geomspace(lambda_min, lambda_max, n_samples)
    if spacing == "linear":
        return np.linspace(lambda_min, lambda_max, n_samples)
    raise UsageError(f"unknown spacing {spacing!r}")


def suggested_elements(op: DiscreteOperator, lambda_max: float) -> int:
    p = op.cfg.params
    return int(math.ceil(lambda_max * SWEEP_CONFIG["cap_divisor"] * p.length / (math.pi * min(wave_speeds(p)))))


def check_cap(op: DiscreteOperator, lambda_max: float) -> float:
    """Refuse bands above the resolved-frequency cap; returns the cap"""
    cap = resolved_frequency_cap(op.cfg.params, op.cfg.n_elements)
    if lambda_max > cap * (1.0 + 1e-12):
        raise FrequencyCapError(lambda_max, cap, suggested_elements(op, lambda_max))
    return cap


def default_threads() -> int:
    value = os.getenv(THREADS_ENV)
    try:
        return max(1, int(value)) if value else 1
    except ValueError:
        logger.warning(f"Ignoring non-integer {THREADS_ENV}={value!r}")
        return 1


def resolvent_sweep(op: DiscreteOperator, lambda_min: float, lambda_max: float, n_samples: int,
                    spacing: str = "log", threads: Optional[int] = None) -> List[ResolventSample]:
    """Resolvent norms on a grid of [lambda_min, lambda_max], returned in grid order"""
    if not 0.0 < lambda_min < lambda_max:
        raise UsageError(f"need 0 < lambda_min < lambda_max (got {lambda_min}, {lambda_max})")
    if n_samples < 2:
        raise UsageError("a sweep needs at least two samples")
    check_cap(op, lambda_max)

    if op.is_conservative:
        _first_undamped_resonance(op, lambda_min, lambda_max)

    grid = sweep_grid(lambda_min, lambda_max, n_samples, spacing)
    workers = threads or default_threads()
    logger.info(f"Sweeping {n_samples} points on [{lambda_min:.4g}, {lambda_max:.4g}] ({spacing}), {workers} worker(s)")
    return _ordered_map(lambda lam: resolvent_norm(op, lam), grid, workers)


def _ordered_map(fn, items, workers: int) -> list:
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map preserves input order whatever the completion order
        return list(pool.map(fn, items))


def band_modes(op: DiscreteOperator, lambda_min: float, lambda_max: float,
               shifts: Optional[Sequence[float]] = None) -> np.ndarray:
    """Damped eigenvalues of the generator with imaginary part in [lambda_min, lambda_max]

    Dense spectrum up to DENSE_LIMIT; above it, the `envelope_k` eigenvalues nearest
    i*lambda for each shift lambda (the band ends when no shifts are given).
    """
    if op.state_size <= DENSE_LIMIT:
        values = eigenvalues(op)
    else:
        shifts = [lambda_min, lambda_max] if shifts is None else shifts
        found = []
        for lam in shifts:
            try:
                found.append(eigenvalues(op, k=SWEEP_CONFIG["envelope_k"], sigma=1j * lam))
            except NumericalError as e:
                logger.warning(f"No eigenvalues near i*{lam:.4g}: {e}")
        values = np.unique(np.concatenate(found)) if found else np.zeros(0, dtype=complex)
    inside = (values.imag >= lambda_min) & (values.imag <= lambda_max) & (values.real < 0.0)
    return values[inside]


def resolvent_envelope(op: DiscreteOperator, lambda_min: float, lambda_max: float, n_samples: int,
                       spacing: str = "log", threads: Optional[int] = None) -> List[ResolventSample]:
    """Upper envelope of the resolvent norm over the band, one sample per grid bin

    Bin i holds grid point i and the eigenfrequencies closer to it than to its neighbours
    (in log or linear distance). Each bin reports the largest norm among its grid point and
    the imaginary parts of its `envelope_modes_per_bin` least-damped eigenvalues, where the
    resonance peaks sit.
    """
    grid_samples = resolvent_sweep(op, lambda_min, lambda_max, n_samples, spacing, threads)
    grid = np.array([s.lam for s in grid_samples])
    modes = band_modes(op, lambda_min, lambda_max, grid)

    coord = np.log if spacing == "log" else np.asarray
    edges = 0.5 * (coord(grid[1:]) + coord(grid[:-1]))
    bins = np.searchsorted(edges, coord(modes.imag))
    peaks = []
    per_bin = SWEEP_CONFIG["envelope_modes_per_bin"]
    for i in range(grid.size):
        members = modes[bins == i]
        least_damped = members[np.argsort(-members.real, kind="stable")][:per_bin]
        peaks.extend(float(mu.imag) for mu in least_damped)

    def peak_norm(lam):
        try:
            return resolvent_norm(op, lam)
        except ResonanceError as e:
            logger.warning(f"Envelope point dropped: {e}")
            return None

    peak_samples = [s for s in _ordered_map(peak_norm, sorted(peaks), threads or default_threads()) if s is not None]
    envelope = list(grid_samples)
    if peak_samples:
        peak_bins = np.searchsorted(edges, coord(np.array([s.lam for s in peak_samples])))
        for i, sample in zip(peak_bins, peak_samples):
            if sample.norm > envelope[i].norm:
                envelope[i] = sample
    logger.info(f"Envelope over {grid.size} bins: {len(peak_samples)} resonance peak(s) evaluated, "
                f"{sum(e is not g for e, g in zip(envelope, grid_samples))} bin(s) raised")
    return envelope


def _first_undamped_resonance(op: DiscreteOperator, lambda_min: float, lambda_max: float) -> None:
    """An undamped generator has its whole spectrum on the imaginary axis"""
    count = min(op.n_dof, max(1, op.n_dof // 2))
    omega, _ = undamped_modes(op, count)
    inside = omega[(omega >= lambda_min) & (omega <= lambda_max)]
    if inside.size:
        raise ResonanceError(float(inside[0]), "undamped eigenfrequency inside the swept band")


def imaginary_axis_clearance(op: DiscreteOperator, lambda_grid: Sequence[float],
                             threads: Optional[int] = None) -> Clearance:
    """min over the grid of sigma_min(i lambda - A_h) in the energy norm"""
    grid = np.asarray(lambda_grid, dtype=float)
    if grid.size == 0:
        raise UsageError("clearance grid is empty")

    def sigma(lam):
        try:
            return resolvent_norm(op, lam).sigma_min
        except ResonanceError:
            return 0.0

    workers = threads or default_threads()
    if workers == 1:
        values = [sigma(lam) for lam in grid]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(sigma, grid))
    i = int(np.argmin(values))
    return Clearance(float(values[i]), float(grid[i]))
