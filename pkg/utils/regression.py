"""
Straight-line least squares used by every rate fit in the laboratory
"""
from dataclasses import dataclass

import numpy as np

from utils.errors import InsufficientDataError


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r2: float
    residual: float   # root-mean-square residual


def fit_line(x, y) -> LinearFit:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 2 or np.ptp(x) == 0.0:
        raise InsufficientDataError("need at least two distinct abscissae for a line fit")
    slope, intercept = np.polyfit(x, y, 1)
    predicted = slope * x + intercept
    ss_res = float(np.sum((y - predicted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0.0 else 1.0
    return LinearFit(float(slope), float(intercept), r2, float(np.sqrt(ss_res / x.size)))


def loglog_fit(x, y) -> LinearFit:
    """Fit log y = slope * log x + intercept"""
    return fit_line(np.log(np.asarray(x, dtype=float)), np.log(np.asarray(y, dtype=float)))
