"""Verification reports and their text rendering."""

from enum import StrEnum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, computed_field

PRNG_NAME = "PCG64"


class StructureKind(StrEnum):
    """Data structures the harness knows how to verify."""

    STACK = "stack"
    HEAP = "heap"
    FINGERTREE = "fingertree"


class Violation(BaseModel):
    """An instance whose amortized cost exceeded the stated bound."""

    check: str
    case: str
    expected_bound: int
    observed: int


class OracleMismatch(BaseModel):
    """An instance where the structure disagreed with its model or contract."""

    check: str
    case: str
    expected: str
    observed: str


class VerifyReport(BaseModel):
    """Aggregated outcome of one verification suite."""

    suite: str
    structure: Optional[StructureKind] = None
    seed: int
    prng: str = PRNG_NAME
    cases_run: int = 0
    violations: List[Violation] = Field(default_factory=list)
    oracle_mismatches: List[OracleMismatch] = Field(default_factory=list)
    elapsed_ms: float = 0.0

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return not self.violations and not self.oracle_mismatches

    def without_timing(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude={"elapsed_ms"})


class RunSummary(BaseModel):
    """All reports of one run, with the seed that reproduces them."""

    seed: int
    prng: str = PRNG_NAME
    reports: List[VerifyReport] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)

    @property
    def total_violations(self) -> int:
        return sum(len(r.violations) for r in self.reports)

    @property
    def total_mismatches(self) -> int:
        return sum(len(r.oracle_mismatches) for r in self.reports)

    def without_timing(self) -> Dict[str, Any]:
        data = self.model_dump(mode="json")
        for report in data["reports"]:
            report.pop("elapsed_ms", None)
        return data


def format_violations(report: VerifyReport, limit: int = 10) -> str:
    """Format a report's failures into a readable string."""
    if report.passed:
        return "No failures"

    lines = []
    for v in report.violations[:limit]:
        lines.append(f"{v.check}: {v.case} -> amortized {v.observed} > bound {v.expected_bound}")
    for m in report.oracle_mismatches[:limit]:
        lines.append(f"{m.check}: {m.case} -> expected {m.expected}, observed {m.observed}")

    hidden = len(report.violations) + len(report.oracle_mismatches) - len(lines)
    if hidden > 0:
        lines.append(f"... and {hidden} more")
    return "\n".join(lines)


def render_text(summary: RunSummary) -> str:
    """Human-readable summary of a run."""
    lines = [f"seed {summary.seed} ({summary.prng})"]
    for report in summary.reports:
        status = "PASS" if report.passed else "FAIL"
        lines.append(
            f"{status}  {report.suite:<24} cases={report.cases_run:<8} "
            f"violations={len(report.violations)} mismatches={len(report.oracle_mismatches)} "
            f"({report.elapsed_ms:.0f} ms)"
        )
        if not report.passed:
            lines.extend("      " + line for line in format_violations(report).splitlines())
    lines.append(
        "all suites passed"
        if summary.passed
        else f"{summary.total_violations} violations, {summary.total_mismatches} mismatches"
    )
    return "\n".join(lines) + "\n"
