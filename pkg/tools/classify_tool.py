"""
classify: regime predicted from the damping layout against the class measured by a sweep
"""
from typing import Any, Dict

from fem.assembly import assemble
from model.regimes import expected_regime
from utils.plot_scripts import PlotScriptBuilder
from utils.report_builders import ReportBuilder
from .common import finish, lab_tool, load_run_scenario, start_run, write_plot, write_table, write_text
from .sweep_tool import run_sweep


@lab_tool("classify")
def classify_tool(arguments: dict) -> Dict[str, Any]:
    cfg = load_run_scenario(arguments)
    out_dir, manifest = start_run(arguments, "classify", cfg)
    expected = expected_regime(cfg.damping)
    op = assemble(cfg)
    samples, stability, reason = run_sweep(cfg, op, arguments.get("threads"))

    if stability is not None:
        report = ReportBuilder.classification(stability, cfg.name, expected)
        agrees = stability.matches(expected)
    else:
        report = [f"scenario={cfg.name}", f"class=unavailable ({reason})", f"expected={expected.label}"]
        agrees = None
    outputs = [
        write_table(manifest, "sweep.csv", ["lambda", "resolvent_norm"], [[s.lam, s.norm] for s in samples]),
        write_text(manifest, "classification.txt", report),
        write_plot(manifest, "sweep.gp", PlotScriptBuilder.resolvent_sweep("sweep.csv", "sweep")),
    ]
    return finish(manifest, outputs, report=report, expected=expected.label,
                  measured=stability.kind.value if stability else None, agrees=agrees)
