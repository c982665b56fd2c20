"""Tests for report models and rendering."""

import json

from amortized_bounds.harness.report import (
    OracleMismatch,
    RunSummary,
    StructureKind,
    VerifyReport,
    Violation,
    format_violations,
    render_text,
)


def failing_report() -> VerifyReport:
    return VerifyReport(
        suite="bounds:stack",
        structure=StructureKind.STACK,
        seed=42,
        cases_run=10,
        violations=[Violation(check="pushP", case="push(0, Empty)", expected_bound=2, observed=3)],
        elapsed_ms=12.5,
    )


class TestVerifyReport:
    def test_passed_is_computed(self):
        assert VerifyReport(suite="x", seed=1).passed
        assert not failing_report().passed

    def test_json_is_stable(self):
        data = json.loads(failing_report().model_dump_json())
        assert data["passed"] is False
        assert data["prng"] == "PCG64"
        assert data["structure"] == "stack"
        assert data["violations"][0]["expected_bound"] == 2

    def test_without_timing(self):
        assert "elapsed_ms" not in failing_report().without_timing()


class TestFormatting:
    def test_no_failures(self):
        assert format_violations(VerifyReport(suite="x", seed=1)) == "No failures"

    def test_limit(self):
        report = VerifyReport(
            suite="x",
            seed=1,
            oracle_mismatches=[
                OracleMismatch(check="c", case=str(i), expected="a", observed="b")
                for i in range(5)
            ],
        )
        text = format_violations(report, limit=2)
        assert text.count("expected a, observed b") == 2
        assert "... and 3 more" in text

    def test_render_text(self):
        summary = RunSummary(seed=42, reports=[failing_report()])
        text = render_text(summary)
        assert text.startswith("seed 42 (PCG64)")
        assert "FAIL  bounds:stack" in text
        assert "1 violations, 0 mismatches" in text
        assert summary.total_violations == 1
        assert summary.without_timing()["reports"][0].get("elapsed_ms") is None
