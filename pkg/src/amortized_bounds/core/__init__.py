"""Amortized-cost accounting shared by every data structure."""

from .cost import (
    Cost,
    Potential,
    StepRecord,
    Trace,
    BankLedger,
    TelescopeResult,
    BoundViolation,
    NegativeBalance,
    amortized_step,
    telescope_check,
    bound_check,
    banker_simulate,
    dump_trace,
    load_trace,
)
from .meter import CostMeter, measure

__all__ = [
    "Cost",
    "Potential",
    "StepRecord",
    "Trace",
    "BankLedger",
    "TelescopeResult",
    "BoundViolation",
    "NegativeBalance",
    "amortized_step",
    "telescope_check",
    "bound_check",
    "banker_simulate",
    "dump_trace",
    "load_trace",
    "CostMeter",
    "measure",
]
