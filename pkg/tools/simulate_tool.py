"""
simulate: energy trace of one scenario, decay-law fit and plot script
"""
import logging
from typing import Any, Dict

from fem.assembly import assemble
from fem.initial import FromFile, InitialKind, Modal, RandomHighFreq, sample_initial
from fitting.decay import fit_decay
from evolve.integrator import simulate
from utils.errors import InsufficientDataError, UsageError
from utils.plot_scripts import PlotScriptBuilder
from .common import finish, lab_tool, load_run_scenario, maybe_dump, start_run, write_plot, write_table, write_text

logger = logging.getLogger('lab.tools')


def parse_initial(spec: str, seed: int) -> InitialKind:
    """'random', 'mode:<m>' or a path to an .npz archive"""
    if not spec or spec == "random":
        return RandomHighFreq(seed)
    if spec.startswith("mode:"):
        try:
            return Modal(int(spec.split(":", 1)[1]))
        except ValueError:
            raise UsageError(f"bad initial state {spec!r}; expected mode:<integer>")
    return FromFile(spec)


@lab_tool("simulate")
def simulate_tool(arguments: dict) -> Dict[str, Any]:
    cfg = load_run_scenario(arguments)
    out_dir, manifest = start_run(arguments, "simulate", cfg)
    op = assemble(cfg)
    s0 = sample_initial(op, parse_initial(arguments.get("initial"), cfg.run.seed))
    trace = simulate(op, s0, cfg.run.t_max, cfg.run.dt, cfg.run.sample_every)

    try:
        fit = fit_decay(trace)
        report = fit.comment_lines()
        fit_summary = {"model": fit.model.value, "rate": fit.rate, "degenerate": fit.degenerate}
    except InsufficientDataError as e:
        logger.warning(f"No decay fit for '{cfg.name}': {e}")
        report = [f"model=unavailable ({e})"]
        fit_summary = {"model": None, "rate": None, "degenerate": None}

    balance = trace.metadata["max_balance_residual"]
    report_lines = [f"scenario={cfg.name}", f"dt={trace.metadata['dt']:.6g}, steps={trace.metadata['steps']}",
                    f"max_balance_residual={balance:.3e}"] + report
    outputs = [
        write_table(manifest, "trace.csv", ["t", "energy", "dissipation"], trace.rows(), report),
        write_text(manifest, "fit_report.txt", report_lines),
        write_plot(manifest, "trace.gp", PlotScriptBuilder.energy_trace("trace.csv", "trace")),
    ]
    outputs += maybe_dump(arguments, op, manifest)
    return finish(manifest, outputs, report=report_lines, fit=fit_summary, max_balance_residual=balance)
