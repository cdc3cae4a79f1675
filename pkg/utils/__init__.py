# Utilities package: errors, regression, CSV output, reports and plot scripts

from .errors import (
    BresseLabError,
    ScenarioError,
    UsageError,
    FrequencyCapError,
    NumericalError,
    ResonanceError,
    InsufficientDataError,
)
from .regression import LinearFit, fit_line, loglog_fit
from .csv_writers import write_csv
from .report_builders import ReportBuilder
from .plot_scripts import PlotScriptBuilder

__all__ = [
    'BresseLabError',
    'ScenarioError',
    'UsageError',
    'FrequencyCapError',
    'NumericalError',
    'ResonanceError',
    'InsufficientDataError',
    'LinearFit',
    'fit_line',
    'loglog_fit',
    'write_csv',
    'ReportBuilder',
    'PlotScriptBuilder',
]
