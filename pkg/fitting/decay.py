"""
Decay-law fitting on energy traces

Two independent straight-line fits on the trailing window of the trace:
    log E = log M - delta t        (exponential)
    log E = log c - gamma log t    (polynomial)
The lower root-mean-square residual wins. A fixed mesh is eventually exponential,
so the time at which the local preference flips from polynomial to exponential is
reported alongside.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from config.settings import FIT_CONFIG
from evolve.trace import EnergyTrace
from utils.errors import InsufficientDataError
from utils.regression import fit_line

logger = logging.getLogger('numerics.fitting')


class FitModel(Enum):
    EXPONENTIAL = "exponential"
    POLYNOMIAL = "polynomial"


@dataclass(frozen=True)
class DecayFit:
    model: FitModel
    rate: float                  # delta (exponential) or gamma (polynomial)
    prefactor: float             # M or c
    window: Tuple[float, float]
    residual: float
    competing_residual: float
    n_window: int
    degenerate: bool = False
    underflow: bool = False
    crossover_time: Optional[float] = None

    @property
    def delta(self) -> Optional[float]:
        return self.rate if self.model is FitModel.EXPONENTIAL else None

    @property
    def gamma(self) -> Optional[float]:
        return self.rate if self.model is FitModel.POLYNOMIAL else None

    def comment_lines(self):
        """Report lines appended to the trace CSV"""
        t0, t1 = self.window
        lines = [f"model={self.model.value}, rate={self.rate:.6g}, window=[{t0:.6g}, {t1:.6g}]",
                 f"residual={self.residual:.6g}, competing_residual={self.competing_residual:.6g}, "
                 f"prefactor={self.prefactor:.6g}"]
        flags = []
        if self.degenerate:
            flags.append("degenerate (no decay)")
        if self.underflow:
            flags.append("energy underflow, window shrunk")
        if flags:
            lines.append("flags=" + "; ".join(flags))
        if self.crossover_time is not None:
            lines.append(f"crossover_time={self.crossover_time:.6g}")
        return lines


def fit_decay(trace: EnergyTrace, window_fraction: float = FIT_CONFIG["window_fraction"]) -> DecayFit:
    if not 0.0 < window_fraction <= 1.0:
        raise ValueError(f"window_fraction must be in (0, 1], got {window_fraction}")
    t = np.asarray(trace.times, dtype=float)
    e = np.asarray(trace.energies, dtype=float)
    if t.size < FIT_CONFIG["min_samples"]:
        raise InsufficientDataError(f"decay fit needs at least {FIT_CONFIG['min_samples']} samples, got {t.size}")

    start = int(np.floor(t.size * (1.0 - window_fraction)))
    lo, hi, underflow = _window(t, e, start)
    tw, ew = t[lo:hi], e[lo:hi]
    if tw.size < 3:
        raise InsufficientDataError("fewer than three positive-energy samples left in the fit window")

    log_e = np.log(ew)
    exp_fit = fit_line(tw, log_e)
    poly_fit = fit_line(np.log(tw), log_e)

    degenerate = float(np.ptp(log_e)) <= FIT_CONFIG["degenerate_tol"]
    if degenerate:
        model, chosen, other = FitModel.POLYNOMIAL, poly_fit, exp_fit
        logger.warning(f"Energy constant over the fit window [{tw[0]:.4g}, {tw[-1]:.4g}]: no decay to fit")
    elif exp_fit.residual < poly_fit.residual:
        model, chosen, other = FitModel.EXPONENTIAL, exp_fit, poly_fit
    else:
        model, chosen, other = FitModel.POLYNOMIAL, poly_fit, exp_fit

    fit = DecayFit(
        model=model,
        rate=-chosen.slope,
        prefactor=float(np.exp(chosen.intercept)),
        window=(float(tw[0]), float(tw[-1])),
        residual=chosen.residual,
        competing_residual=other.residual,
        n_window=int(tw.size),
        degenerate=degenerate,
        underflow=underflow,
        crossover_time=None if degenerate else crossover_time(t, e),
    )
    logger.info(f"Decay fit: {model.value} rate={fit.rate:.6g} on [{tw[0]:.4g}, {tw[-1]:.4g}] "
                f"(residual {fit.residual:.3e} vs {fit.competing_residual:.3e})")
    return fit


def _window(t: np.ndarray, e: np.ndarray, start: int) -> Tuple[int, int, bool]:
    """Index range of the fit window: positive times, energies above the underflow floor"""
    lo = max(start, int(np.searchsorted(t, 0.0, side='right')))
    hi = t.size
    alive = e > FIT_CONFIG["underflow"]
    if np.all(alive[lo:hi]):
        return lo, hi, False

    first_dead = int(np.argmin(alive))
    if first_dead > lo:
        hi = first_dead
    else:
        # the whole trailing window underflowed: refit on the tail of what survives
        positive_start = int(np.searchsorted(t, 0.0, side='right'))
        hi = first_dead
        lo = positive_start + int(np.floor((hi - positive_start) * (1.0 - FIT_CONFIG["window_fraction"])))
    logger.warning(f"Energy below {FIT_CONFIG['underflow']:.0e} from t={t[first_dead]:.4g}; window shrunk")
    return lo, max(lo, hi), True


def crossover_time(t: np.ndarray, e: np.ndarray) -> Optional[float]:
    """Start of the first segment where the exponential model fits better after the polynomial one did"""
    keep = (t > 0.0) & (e > FIT_CONFIG["underflow"])
    t, e = t[keep], e[keep]
    segments = FIT_CONFIG["crossover_segments"]
    if t.size < 3 * segments:
        return None
    previous = None
    for chunk_t, chunk_e in zip(np.array_split(t, segments), np.array_split(e, segments)):
        log_e = np.log(chunk_e)
        if np.ptp(log_e) == 0.0:
            return None
        exp_better = fit_line(chunk_t, log_e).residual < fit_line(np.log(chunk_t), log_e).residual
        if previous is False and exp_better:
            return float(chunk_t[0])
        previous = exp_better
    return None
