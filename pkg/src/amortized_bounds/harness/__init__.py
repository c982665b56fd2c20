"""Verification harness: generators, oracles, scripted traces and suite runners."""

from .generators import GenConfig, make_rng, random_script
from .report import RunSummary, StructureKind, VerifyReport, render_text
from .suites import (
    oracle_check,
    run_bound_suite,
    run_contract_suite,
    run_suites,
    timing_crosscheck,
)
from .traces import build_ledger, parse_script, render_ledger, run_script

__all__ = [
    "GenConfig",
    "make_rng",
    "random_script",
    "RunSummary",
    "StructureKind",
    "VerifyReport",
    "render_text",
    "oracle_check",
    "run_bound_suite",
    "run_contract_suite",
    "run_suites",
    "timing_crosscheck",
    "build_ledger",
    "parse_script",
    "render_ledger",
    "run_script",
]
