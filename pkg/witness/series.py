"""
Growth of the witness sequence over several modes, and its comparison with discrete resolvent norms
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from config.settings import LAB_CONFIG, WITNESS_CONFIG
from fem.assembly import DiscreteOperator
from fem.mesh import resolved_frequency_cap
from model.damping import DampingModel
from model.params import BeamParameters
from model.scenario import BoundaryCondition, ScenarioConfig
from spectral.resolvent import resolvent_norm
from utils.errors import InsufficientDataError, ResonanceError, UsageError
from utils.regression import LinearFit, loglog_fit
from .construction import WitnessSample, witness_sample

logger = logging.getLogger('numerics.witness')

FLAG_MESSAGE = "lack of uniform stability indicated"


@dataclass(frozen=True)
class WitnessReport:
    samples: List[WitnessSample]
    state_fit: LinearFit        # norm_V ~ n^p
    residual_fit: LinearFit     # norm_residual ~ n^q

    @property
    def p(self) -> float:
        return self.state_fit.slope

    @property
    def q(self) -> float:
        return self.residual_fit.slope

    @property
    def flagged(self) -> bool:
        """Residual grows strictly slower than the state"""
        return self.q - self.p < 0.0

    @property
    def flag_text(self) -> str:
        return FLAG_MESSAGE if self.flagged else "none"


@dataclass(frozen=True)
class CrossCheck:
    lambdas: List[float]
    norms: List[float]
    slope: Optional[float]          # of log ||R(i lambda_n)|| against log lambda_n
    witness_exponent: float         # p - q, growth of ||V_n|| / ||(i lambda_n - A) V_n||
    skipped: List[int] = field(default_factory=list)   # modes above the resolved cap

    @property
    def agree(self) -> Optional[bool]:
        """Both measurements show growth, or both show none"""
        if self.slope is None:
            return None
        return (self.witness_exponent > 0.0) == (self.slope > 0.0)

    @property
    def verdict(self) -> str:
        if self.agree is None:
            return "n/a"
        return "PASS" if self.agree else "FAIL"


def check_witness_scenario(cfg: ScenarioConfig) -> None:
    """DNND with Kelvin-Voigt D1 = 0 and D2 = D3 = 1 on the whole beam"""
    if cfg.bc is not BoundaryCondition.DIRICHLET_NEUMANN_NEUMANN:
        raise UsageError("witness construction: DNND required (bc.type = \"dnnd\")")
    d1, d2, d3 = cfg.damping.profiles
    xs = np.linspace(0.0, cfg.params.length, LAB_CONFIG["profile_check_points"])
    unit = all(np.allclose(p.values(xs), 1.0, rtol=0.0, atol=1e-14) for p in (d2, d3))
    if cfg.damping.model is not DampingModel.KELVIN_VOIGT or not d1.is_zero or not unit:
        raise UsageError("witness construction requires Kelvin-Voigt damping D1 = 0 and D2 = D3 = 1 on (0, L)")


def witness_series(n_list: Sequence[int], params: BeamParameters) -> WitnessReport:
    modes = sorted(int(n) for n in n_list)
    if len(set(modes)) != len(modes):
        raise UsageError(f"witness modes must be distinct: {list(n_list)}")
    if len(modes) < WITNESS_CONFIG["min_points"]:
        raise InsufficientDataError(
            f"witness growth fit needs at least {WITNESS_CONFIG['min_points']} modes, got {len(modes)}"
        )
    samples = [witness_sample(n, params) for n in modes]
    ns = np.array(modes, dtype=float)
    state_fit = loglog_fit(ns, [s.norm_V for s in samples])
    residual_fit = loglog_fit(ns, [s.norm_residual for s in samples])
    report = WitnessReport(samples, state_fit, residual_fit)
    logger.info(f"Witness growth over n={modes}: p={report.p:.4f}, q={report.q:.4f}, q-p={report.q - report.p:.4f}")
    return report


def cross_check(report: WitnessReport, op: DiscreteOperator) -> CrossCheck:
    """Discrete resolvent norms at lambda_n for the modes the mesh resolves"""
    cap = resolved_frequency_cap(op.cfg.params, op.cfg.n_elements)
    lambdas, norms, skipped = [], [], []
    for s in report.samples:
        if s.lambda_n > cap:
            skipped.append(s.n)
            continue
        try:
            norm = resolvent_norm(op, s.lambda_n).norm
        except ResonanceError as e:
            logger.warning(f"Cross-check at n={s.n}: {e}")
            norm = math.inf
        lambdas.append(s.lambda_n)
        norms.append(norm)

    finite = [(lam, nv) for lam, nv in zip(lambdas, norms) if math.isfinite(nv)]
    slope = None
    if len(finite) >= 2:
        slope = loglog_fit([f[0] for f in finite], [f[1] for f in finite]).slope
    result = CrossCheck(lambdas, norms, slope, report.p - report.q, skipped)
    logger.info(f"Witness cross-check: resolvent slope={slope}, witness exponent p-q={report.p - report.q:.4f}, "
                f"skipped modes above cap {cap:.4g}: {skipped}")
    if result.verdict == "FAIL":
        logger.warning(f"Witness cross-check FAIL: resolvent slope {slope:.4f} and witness exponent "
                       f"{result.witness_exponent:.4f} disagree on the sign of growth")
    return result
