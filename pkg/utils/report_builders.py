"""
Structured-text reports for fits, classifications, witness series and the summary table
"""
from typing import Any, Dict, List, Optional


class ReportBuilder:
    """Build report text from result objects; one `key=value` fact per line"""

    @staticmethod
    def classification(stability, scenario: str, expected: Optional[Any] = None) -> List[str]:
        lo, hi = stability.window
        lines = [
            f"scenario={scenario}",
            f"class={stability.kind.value}, slope={stability.slope:.4f}",
            f"r2={stability.r2:.6f}",
            f"window=[{lo:.6g}, {hi:.6g}], samples={stability.n_fit}",
            f"predicted_decay={stability.predicted_decay}",
        ]
        if stability.growth_exponent is not None:
            lines.append(f"growth_exponent={stability.growth_exponent:.4f}")
        if expected is not None:
            verdict = "PASS" if stability.matches(expected) else "FAIL"
            lines.append(f"expected={expected.label}, verdict={verdict}")
        return lines

    @staticmethod
    def witness(report, cross=None) -> List[str]:
        lines = [
            f"modes={[s.n for s in report.samples]}",
            f"p={report.p:.4f} (norm_V ~ n^p, r2={report.state_fit.r2:.6f})",
            f"q={report.q:.4f} (norm_residual ~ n^q, r2={report.residual_fit.r2:.6f})",
            f"q-p={report.q - report.p:.4f}",
        ]
        lines.append(f"flag={report.flag_text}")
        if cross is not None:
            slope = "n/a" if cross.slope is None else f"{cross.slope:.4f}"
            lines.append(f"cross_check={cross.verdict} (resolvent slope={slope}, "
                         f"witness exponent p-q={cross.witness_exponent:.4f})")
            if cross.skipped:
                lines.append(f"cross_check_skipped_modes={cross.skipped}")
        return lines

    @staticmethod
    def spectrum(abscissa: float, count: int) -> List[str]:
        return [f"eigenvalues={count}", f"spectral_abscissa={abscissa:.12g}"]

    @staticmethod
    def table(rows: List[Dict[str, Any]]) -> List[str]:
        """Fixed-width table: row, damping, expected class, measured class, slope, verdict"""
        header = f"{'row':<4} {'damping':<36} {'expected':<22} {'measured':<12} {'slope':>8}  verdict"
        lines = [header, "-" * len(header)]
        for row in rows:
            slope = "-" if row.get("slope") is None else f"{row['slope']:.3f}"
            measured = row.get("measured") or "error"
            lines.append(
                f"{row['row']:<4} {row['damping']:<36} {row['expected']:<22} {measured:<12} {slope:>8}  {row['verdict']}"
            )
            if row.get("error"):
                lines.append(f"     error: {row['error']}")
        return lines

    @staticmethod
    def render(lines: List[str]) -> str:
        return "\n".join(lines) + "\n"
