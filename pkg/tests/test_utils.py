import math

import numpy as np
import pytest

from model.regimes import Regime, StabilityKind
from spectral.classify import StabilityClass
from tests.conftest import read_csv
from utils.csv_writers import format_value, write_csv
from utils.errors import FrequencyCapError, InsufficientDataError, ResonanceError, ScenarioError, UsageError
from utils.plot_scripts import PlotScriptBuilder
from utils.regression import fit_line, loglog_fit
from utils.report_builders import ReportBuilder


class TestRegression:
    def test_exact_line(self):
        fit = fit_line([0.0, 1.0, 2.0, 3.0], [1.0, 3.0, 5.0, 7.0])
        assert fit.slope == pytest.approx(2.0)
        assert fit.intercept == pytest.approx(1.0)
        assert fit.r2 == pytest.approx(1.0)
        assert fit.residual == pytest.approx(0.0, abs=1e-12)

    def test_power_law(self):
        x = np.geomspace(1.0, 100.0, 10)
        assert loglog_fit(x, 3.0 * x ** -1.5).slope == pytest.approx(-1.5)

    def test_degenerate_abscissae(self):
        with pytest.raises(InsufficientDataError):
            fit_line([1.0, 1.0], [2.0, 3.0])
        with pytest.raises(InsufficientDataError):
            fit_line([1.0], [2.0])


class TestCsv:
    def test_full_precision_and_trailing_comments(self, tmp_path):
        path = tmp_path / "sub" / "out.csv"
        write_csv(str(path), ["lambda", "resolvent_norm"], [[0.1, 1.0 / 3.0], [2, 5.5]], ["manifest=abc"])
        text = path.read_text(encoding="utf-8")
        assert text == "lambda,resolvent_norm\n0.10000000000000001,0.33333333333333331\n2,5.5\n# manifest=abc\n"
        assert read_csv(str(path)) == [[0.1, 1.0 / 3.0], [2.0, 5.5]]

    def test_format_value(self):
        assert format_value(math.pi) == "3.1415926535897931"
        assert format_value(7) == "7"


class TestErrors:
    def test_exit_codes(self):
        assert ScenarioError(["x"]).exit_code == 2
        assert UsageError("x").exit_code == 2
        assert FrequencyCapError(10.0, 5.0, 16).exit_code == 2
        assert ResonanceError(1.0).exit_code == 1
        assert InsufficientDataError("x").exit_code == 1

    def test_messages(self):
        assert str(ScenarioError(["a", "b"])) == "a; b"
        assert "n_elements=16" in str(FrequencyCapError(10.0, 5.0, 16))
        assert str(ResonanceError(2.5, "singular")) == "resonance at lambda=2.5: singular"


class TestReports:
    def stability(self, kind=StabilityKind.POLYNOMIAL, exponent=2.0):
        return StabilityClass(kind, exponent, 2.0 if exponent else -1.0, 0.999, (10.0, 100.0), 12)

    def test_classification_verdict(self):
        lines = ReportBuilder.classification(self.stability(), "row3", Regime.POLYNOMIAL_ONE_OVER_T)
        assert lines[0] == "scenario=row3"
        assert lines[1] == "class=polynomial, slope=2.0000"
        assert "predicted_decay=t^(-1)" in lines
        assert lines[-1] == "expected=polynomial_1/t, verdict=PASS"

    def test_classification_mismatch(self):
        lines = ReportBuilder.classification(self.stability(StabilityKind.ANALYTIC, None), "row3",
                                             Regime.POLYNOMIAL_ONE_OVER_T)
        assert lines[-1].endswith("verdict=FAIL")
        assert not any(line.startswith("growth_exponent") for line in lines)

    def test_table_layout(self):
        rows = [
            {"row": 1, "damping": "global", "expected": "analytic", "measured": "analytic",
             "slope": -1.01, "verdict": "PASS"},
            {"row": 2, "damping": "smooth", "expected": "exponential", "measured": None,
             "slope": None, "verdict": "ERROR", "error": "resonance at lambda=3"},
        ]
        lines = ReportBuilder.table(rows)
        assert lines[0].startswith("row")
        assert set(lines[1]) == {"-"}
        assert lines[2].endswith("-1.010  PASS")
        assert "error" in lines[3] and lines[3].endswith("ERROR")
        assert lines[4] == "     error: resonance at lambda=3"

    def test_render(self):
        assert ReportBuilder.render(["a", "b"]) == "a\nb\n"


class TestPlotScripts:
    def test_sweep_script_reads_its_csv(self):
        script = PlotScriptBuilder.resolvent_sweep("sweep.csv", "sweep")
        assert 'set output "sweep.png"' in script
        assert '"sweep.csv" skip 1 using 1:2' in script
        assert script.endswith("\n")

    def test_trace_script_has_both_scales(self):
        script = PlotScriptBuilder.energy_trace("trace.csv", "trace")
        assert "trace_semilog.png" in script and "trace_loglog.png" in script
        assert 'set datafile commentschars "#"' in script
