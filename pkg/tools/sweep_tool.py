"""
sweep: resolvent norms along the imaginary axis and the stability class they indicate
"""
import logging
from typing import Any, Dict, List, Optional, Tuple

from fem.assembly import DiscreteOperator, assemble
from fem.mesh import resolved_frequency_cap
from model.scenario import ScenarioConfig
from spectral.classify import StabilityClass, classify_decay
from spectral.resolvent import ResolventSample, resolvent_envelope
from utils.errors import InsufficientDataError
from utils.plot_scripts import PlotScriptBuilder
from utils.report_builders import ReportBuilder
from .common import finish, lab_tool, load_run_scenario, maybe_dump, start_run, write_plot, write_table, write_text

logger = logging.getLogger('lab.tools')

# default band: two decades ending at the resolved-frequency cap
DEFAULT_DECADES = 2.0


def sweep_band(cfg: ScenarioConfig) -> Tuple[float, float]:
    cap = resolved_frequency_cap(cfg.params, cfg.n_elements)
    lambda_max = cfg.run.lambda_max if cfg.run.lambda_max is not None else cap
    lambda_min = cfg.run.lambda_min if cfg.run.lambda_min is not None else lambda_max / 10.0 ** DEFAULT_DECADES
    return lambda_min, lambda_max


def run_sweep(cfg: ScenarioConfig, op: DiscreteOperator,
              threads: Optional[int] = None) -> Tuple[List[ResolventSample], Optional[StabilityClass], Optional[str]]:
    """Envelope sweep plus classification; a sweep too short to classify still returns its samples"""
    lambda_min, lambda_max = sweep_band(cfg)
    samples = resolvent_envelope(op, lambda_min, lambda_max, cfg.run.samples, cfg.run.spacing, threads)
    try:
        return samples, classify_decay(samples), None
    except InsufficientDataError as e:
        logger.warning(f"Sweep of '{cfg.name}' not classified: {e}")
        return samples, None, str(e)


@lab_tool("sweep")
def sweep_tool(arguments: dict) -> Dict[str, Any]:
    cfg = load_run_scenario(arguments)
    out_dir, manifest = start_run(arguments, "sweep", cfg)
    op = assemble(cfg)
    samples, stability, reason = run_sweep(cfg, op, arguments.get("threads"))

    if stability is not None:
        report = ReportBuilder.classification(stability, cfg.name)
    else:
        report = [f"scenario={cfg.name}", f"class=unavailable ({reason})"]
    rows = [[s.lam, s.norm] for s in samples]
    outputs = [
        write_table(manifest, "sweep.csv", ["lambda", "resolvent_norm"], rows),
        write_text(manifest, "classification.txt", report),
        write_plot(manifest, "sweep.gp", PlotScriptBuilder.resolvent_sweep("sweep.csv", "sweep")),
    ]
    outputs += maybe_dump(arguments, op, manifest)
    summary = {"class": stability.kind.value if stability else None,
               "slope": stability.slope if stability else None}
    return finish(manifest, outputs, report=report, **summary)
