"""Pytest configuration and fixtures for amortized-bounds tests."""

import os
import tempfile
from pathlib import Path
from typing import Generator

import pytest

from amortized_bounds.core.cost import StepRecord, Trace
from amortized_bounds.harness.generators import GenConfig
from amortized_bounds.harness.report import StructureKind
from amortized_bounds.utils.cache import enumeration_cache


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmp_dir:
        yield Path(tmp_dir)


@pytest.fixture
def small_cfg() -> GenConfig:
    """Generator settings small enough for every suite to finish quickly."""
    return GenConfig(
        structure=StructureKind.STACK, max_size=12, num_traces=20, trace_len=15, seed=7
    )


@pytest.fixture
def push_push_multipop() -> Trace:
    """Two pushes then multipop 2 on an empty stack."""
    return Trace(
        steps=(
            StepRecord(op="push", actual=1, phi_before=0, phi_after=1, bound=2),
            StepRecord(op="push", actual=1, phi_before=1, phi_after=2, bound=2),
            StepRecord(op="multipop", actual=3, phi_before=2, phi_after=0, bound=2),
        )
    )


@pytest.fixture
def stack_script() -> str:
    """Three pushes then multipop 3."""
    return """
# three pushes
push 1
push 2
push 3
multipop 3
"""


@pytest.fixture
def stack_script_file(temp_dir: Path, stack_script: str) -> Path:
    script_file = temp_dir / "ops.txt"
    script_file.write_text(stack_script)
    return script_file


# Environment setup
@pytest.fixture(autouse=True)
def setup_test_environment():
    """Set up test environment variables."""
    # Disable logging during tests
    os.environ["LOG_LEVEL"] = "CRITICAL"

    yield

    os.environ.pop("LOG_LEVEL", None)
    enumeration_cache.clear()
