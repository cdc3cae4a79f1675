"""
spectrum: eigenvalues of the discrete generator and its spectral abscissa
"""
from typing import Any, Dict

import numpy as np

from fem.assembly import assemble
from spectral.eigen import eigenvalues
from utils.plot_scripts import PlotScriptBuilder
from utils.report_builders import ReportBuilder
from .common import finish, lab_tool, load_run_scenario, maybe_dump, start_run, write_plot, write_table, write_text


@lab_tool("spectrum")
def spectrum_tool(arguments: dict) -> Dict[str, Any]:
    cfg = load_run_scenario(arguments)
    out_dir, manifest = start_run(arguments, "spectrum", cfg)
    op = assemble(cfg)
    values = eigenvalues(op)
    abscissa = float(np.max(values.real))

    report = [f"scenario={cfg.name}"] + ReportBuilder.spectrum(abscissa, len(values))
    outputs = [
        write_table(manifest, "spectrum.csv", ["re", "im"], [[float(z.real), float(z.imag)] for z in values]),
        write_text(manifest, "spectrum_report.txt", report),
        write_plot(manifest, "spectrum.gp", PlotScriptBuilder.spectrum("spectrum.csv", "spectrum")),
    ]
    outputs += maybe_dump(arguments, op, manifest)
    return finish(manifest, outputs, report=report, spectral_abscissa=abscissa, count=len(values))
