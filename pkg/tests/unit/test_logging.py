"""Tests for logging setup and structured log helpers."""

import json
import logging

import pytest

from amortized_bounds.config import LoggingConfig
from amortized_bounds.utils.logging_config import (
    JSONFormatter,
    LoggerMixin,
    get_logger,
    log_command,
    log_suite_completion,
    log_suite_start,
    setup_logging,
)


@pytest.fixture
def restore_root_logger():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for handler in root.handlers:
        if handler not in handlers:
            handler.close()
    root.handlers[:] = handlers
    root.setLevel(level)


class TestJSONFormatter:
    def test_extra_fields_are_included(self):
        record = logging.LogRecord(
            "amortized_bounds.x", logging.INFO, __file__, 1, "hi", None, None
        )
        record.suite = "bounds:stack"
        entry = json.loads(JSONFormatter().format(record))

        assert entry["message"] == "hi"
        assert entry["level"] == "INFO"
        assert entry["suite"] == "bounds:stack"
        assert "msg" not in entry


class TestSetupLogging:
    def test_level_and_file(self, temp_dir, restore_root_logger):
        log_file = temp_dir / "logs" / "run.log"
        setup_logging(LoggingConfig(level="DEBUG", format="json", file=str(log_file)))

        get_logger("test").debug("written")
        for handler in logging.getLogger().handlers:
            handler.flush()

        assert logging.getLogger().level == logging.DEBUG
        line = log_file.read_text().splitlines()[0]
        assert json.loads(line)["message"] == "written"


class TestLogHelpers:
    def test_logger_names(self):
        assert get_logger("cli").name == "amortized_bounds.cli"

        class Worker(LoggerMixin):
            pass

        assert Worker().logger.name == "amortized_bounds.Worker"

    def test_suite_events(self, caplog):
        with caplog.at_level(logging.INFO, logger="amortized_bounds"):
            log_suite_start("bounds:heap", {"seed": 1})
            log_suite_completion("bounds:heap", False, 0.5, cases_run=9)
            log_command("verify", 1, 1.0)

        events = [getattr(r, "event", None) for r in caplog.records]
        assert events == ["suite_start", "suite_complete", "command_complete"]
        assert caplog.records[1].levelno == logging.WARNING
        assert caplog.records[1].duration_ms == 500.0
