"""Amortized bounds: executable potential functions and cost checks."""

__version__ = "0.1.0"

from .core import Trace, StepRecord, amortized_step, banker_simulate, bound_check, telescope_check

__all__ = [
    "Trace",
    "StepRecord",
    "amortized_step",
    "banker_simulate",
    "bound_check",
    "telescope_check",
    "__version__",
]
