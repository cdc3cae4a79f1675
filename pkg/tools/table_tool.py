"""
table: the four summary-table fixtures swept and classified, one PASS/FAIL verdict per row
"""
import hashlib
import logging
from typing import Any, Dict, List, Optional

from fem.assembly import assemble
from model.fixtures import table_fixtures
from model.regimes import Regime, StabilityKind
from utils.errors import BresseLabError
from utils.report_builders import ReportBuilder
from .common import finish, lab_tool, start_run, write_table, write_text
from .sweep_tool import run_sweep

logger = logging.getLogger('lab.tools')

# slack on the continuum growth exponent a finite mesh may show
SLOPE_SLACK = 0.3


def row_verdict(regime: Regime, kind: Optional[StabilityKind], slope: Optional[float],
                previous_slope: Optional[float]) -> str:
    if kind is None or slope is None:
        return "FAIL"
    if regime.kind is StabilityKind.POLYNOMIAL:
        ok = kind is StabilityKind.POLYNOMIAL and slope <= regime.growth_exponent + SLOPE_SLACK
        if regime is Regime.POLYNOMIAL_ONE_OVER_SQRT_T and previous_slope is not None:
            ok = ok and slope > previous_slope
        return "PASS" if ok else "FAIL"
    ok = kind is regime.kind and abs(slope - regime.growth_exponent) <= SLOPE_SLACK
    return "PASS" if ok else "FAIL"


@lab_tool("table")
def table_tool(arguments: dict) -> Dict[str, Any]:
    n_elements = int(arguments.get("n_elements") or 200)
    fixtures = table_fixtures(n_elements)
    combined = hashlib.sha256("".join(cfg.config_hash() for _, cfg, _ in fixtures).encode("utf-8")).hexdigest()
    out_dir, manifest = start_run(arguments, "table", config_hash=combined)
    rows: List[Dict[str, Any]] = []
    previous_slope = None

    for index, (label, cfg, regime) in enumerate(fixtures, start=1):
        row = {"row": index, "damping": label, "expected": regime.label, "measured": None,
               "slope": None, "r2": None, "verdict": "FAIL", "error": None}
        try:
            cfg = cfg.with_run(samples=arguments.get("samples"))
            op = assemble(cfg)
            _, stability, reason = run_sweep(cfg, op, arguments.get("threads"))
            if stability is None:
                row["error"] = reason
            else:
                row.update(measured=stability.kind.value, slope=stability.slope, r2=stability.r2)
                row["verdict"] = row_verdict(regime, stability.kind, stability.slope, previous_slope)
        except BresseLabError as e:
            logger.error(f"Table row {index} ({label}) failed: {e}")
            row["error"] = str(e)
        if regime is Regime.POLYNOMIAL_ONE_OVER_T:
            previous_slope = row["slope"]
        rows.append(row)

    lines = ReportBuilder.table(rows)
    csv_rows = [[r["row"], r["damping"], r["expected"], r["measured"] or "error",
                 "" if r["slope"] is None else r["slope"], "" if r["r2"] is None else r["r2"], r["verdict"]]
                for r in rows]
    outputs = [
        write_table(manifest, "table.csv", ["row", "damping", "expected", "measured", "slope", "r2", "verdict"],
                    csv_rows),
        write_text(manifest, "table.txt", lines),
    ]
    return finish(manifest, outputs, report=lines, rows=rows,
                  all_pass=all(r["verdict"] == "PASS" for r in rows))
