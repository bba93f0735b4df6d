__version__ = "0.1.0"

from .result_table import ResultTable
from .commands import COMMANDS, calibrated_resonator, readout_frequencies, sweep_states


__all__ = [
    "COMMANDS",
    "ResultTable",
    "__version__",
    "calibrated_resonator",
    "readout_frequencies",
    "sweep_states",
]
