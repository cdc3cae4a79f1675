"""
witness: closed-form witness series for a DNND scenario, with a discrete resolvent cross-check
"""
from typing import Any, Dict

from config.settings import WITNESS_CONFIG
from fem.assembly import assemble
from utils.errors import UsageError
from utils.plot_scripts import PlotScriptBuilder
from utils.report_builders import ReportBuilder
from witness.series import check_witness_scenario, cross_check, witness_series
from .common import finish, lab_tool, load_run_scenario, start_run, write_plot, write_table, write_text

HEADER = ["n", "lambda", "re_A", "im_A", "re_B", "im_B", "re_C", "im_C", "norm_V", "norm_residual"]


@lab_tool("witness")
def witness_tool(arguments: dict) -> Dict[str, Any]:
    cfg = load_run_scenario(arguments)
    check_witness_scenario(cfg)
    modes = sorted(set(cfg.run.modes))
    if len(modes) < WITNESS_CONFIG["min_points"]:
        raise UsageError(f"witness growth fit needs at least {WITNESS_CONFIG['min_points']} distinct modes, got {modes}")
    out_dir, manifest = start_run(arguments, "witness", cfg)

    report = witness_series(modes, cfg.params)
    cross = None if arguments.get("no_cross_check") else cross_check(report, assemble(cfg))
    lines = [f"scenario={cfg.name}"] + ReportBuilder.witness(report, cross)

    rows = []
    for s in report.samples:
        a, b, c = s.coeffs
        rows.append([s.n, s.lambda_n, a.real, a.imag, b.real, b.imag, c.real, c.imag, s.norm_V, s.norm_residual])
    outputs = [
        write_table(manifest, "witness.csv", HEADER, rows),
        write_text(manifest, "witness_report.txt", lines),
        write_plot(manifest, "witness.gp", PlotScriptBuilder.witness("witness.csv", "witness")),
    ]
    return finish(manifest, outputs, report=lines, p=report.p, q=report.q, flagged=report.flagged,
                  cross_check=None if cross is None else cross.verdict)
