"""
Unit tests for the logging and error handlers.
"""

import importlib.util
import logging

import pytest

from weaksig.exceptions import SignalFormatError
from weaksig.handlers import ErrorHandler, LoggingHandler
from weaksig.handlers.logging_handler import QUIET_LIBRARIES, ColoredFormatter


def test_error_summary_lists_failed_inputs():
    handler = ErrorHandler()
    handler.handle_item_error("b.sgnl", SignalFormatError("bad magic", "b.sgnl", 0))
    handler.handle_item_error("a.sgnl", ValueError("boom"))
    summary = handler.get_error_summary()
    assert "Error Summary (2 errors)" in summary
    assert "SignalFormatError: 1" in summary
    assert "Failed inputs (2)" in summary
    assert summary.index("a.sgnl") < summary.index("b.sgnl")


def test_fatal_errors_are_reraised():
    handler = ErrorHandler()
    with pytest.raises(ValueError):
        handler.handle_error(ValueError("fatal"), context="eval", fatal=True)
    assert handler.has_errors()
    handler.clear_errors()
    assert handler.get_error_summary() == "No errors encountered."


def test_detailed_log_has_tracebacks_for_foreign_errors(tmp_path):
    handler = ErrorHandler()
    try:
        raise KeyError("missing")
    except KeyError as e:
        handler.handle_error(e, context="enhance", item="x.sgnl")
    handler.handle_error(SignalFormatError("bad magic"), context="enhance")
    path = tmp_path / "errors.log"
    handler.write_detailed_error_log(str(path))
    text = path.read_text(encoding="utf-8")
    assert text.startswith("weaksig - Detailed Error Log")
    assert "Input: x.sgnl" in text
    assert text.count("Traceback:") == 1


def test_log_file_receives_records(tmp_path):
    path = tmp_path / "run.log"
    LoggingHandler().setup_logging("DEBUG", str(path), quiet=True, plain=True)
    logging.getLogger("weaksig.test").debug("hello from the test")
    for handler in logging.getLogger().handlers:
        handler.flush()
    assert "hello from the test" in path.read_text(encoding="utf-8")


def test_quiet_without_file_installs_null_handler():
    LoggingHandler().setup_logging("INFO", quiet=True)
    handlers = logging.getLogger().handlers
    assert len(handlers) == 1
    assert isinstance(handlers[0], logging.NullHandler)


def test_colored_formatter_wraps_known_levels():
    record = logging.LogRecord("weaksig", logging.WARNING, __file__, 1, "careful", None, None)
    text = ColoredFormatter().format(record)
    assert "careful" in text
    assert text.startswith("\x1b[")


def test_quiet_libraries_are_installed_dependencies():
    LoggingHandler().setup_logging("DEBUG", quiet=True)
    for name in QUIET_LIBRARIES:
        assert importlib.util.find_spec(name) is not None
        assert logging.getLogger(name).level == logging.WARNING
