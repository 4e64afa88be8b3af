"""Logging and error handlers for weaksig."""

from .error_handler import ErrorHandler, error_handler
from .logging_handler import LoggingHandler, logging_handler

__all__ = ["LoggingHandler", "ErrorHandler", "logging_handler", "error_handler"]
