# Subcommand tools: each takes an arguments dict and returns a result dict

from .simulate_tool import simulate_tool
from .sweep_tool import sweep_tool
from .spectrum_tool import spectrum_tool
from .witness_tool import witness_tool
from .classify_tool import classify_tool
from .table_tool import table_tool

TOOLS = {
    "simulate": simulate_tool,
    "sweep": sweep_tool,
    "spectrum": spectrum_tool,
    "witness": witness_tool,
    "classify": classify_tool,
    "table": table_tool,
    "report": table_tool,
}

__all__ = [
    'simulate_tool',
    'sweep_tool',
    'spectrum_tool',
    'witness_tool',
    'classify_tool',
    'table_tool',
    'TOOLS',
]
