"""Error collection and reporting for batch runs."""

import logging
import traceback
from collections import Counter
from dataclasses import dataclass
from typing import List, Optional

from ..exceptions import WeakSigError

LOG_TITLE = "weaksig - Detailed Error Log"


@dataclass(frozen=True)
class ErrorRecord:
    """One recorded failure; traceback is kept only for non-weaksig exceptions."""

    type: str
    message: str
    context: Optional[str] = None
    item: Optional[str] = None
    traceback: Optional[str] = None
    fatal: bool = False

    @classmethod
    def from_exception(
        cls,
        error: Exception,
        context: Optional[str] = None,
        item: Optional[str] = None,
        fatal: bool = False,
    ) -> "ErrorRecord":
        trace = None
        if not isinstance(error, WeakSigError):
            trace = "".join(traceback.format_exception(type(error), error, error.__traceback__))
        return cls(type(error).__name__, str(error), context, item, trace, fatal)

    def one_line(self) -> str:
        prefix = [f"[{self.item}]"] if self.item else []
        if self.context:
            prefix.append(f"({self.context})")
        return " ".join([*prefix, f"{self.type}: {self.message}"])

    def log_lines(self) -> List[str]:
        lines = [f"Type: {self.type}", f"Message: {self.message}"]
        if self.context:
            lines.append(f"Context: {self.context}")
        if self.item:
            lines.append(f"Input: {self.item}")
        if self.traceback:
            lines.append(f"Traceback:\n{self.traceback}")
        return lines


class ErrorHandler:
    """
    Records errors from batch items, then summarises them or writes a detailed log.
    """

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self.errors: List[ErrorRecord] = []

    @property
    def error_count(self) -> int:
        return len(self.errors)

    def handle_error(
        self,
        error: Exception,
        context: Optional[str] = None,
        item: Optional[str] = None,
        fatal: bool = False,
    ) -> None:
        """
        Record and log an error.

        Args:
            error: The exception that occurred
            context: Where the error occurred (e.g. "enhance")
            item: Input file or seed the error belongs to
            fatal: Re-raise after recording
        """
        record = ErrorRecord.from_exception(error, context, item, fatal)
        self.errors.append(record)
        if fatal:
            self.logger.critical(record.one_line())
            raise error
        self.logger.error(record.one_line())

    def handle_item_error(self, item: str, error: Exception) -> None:
        """BatchProcessor error callback."""
        self.handle_error(error, context="batch item", item=item)

    def get_error_summary(self) -> str:
        """Error counts by type, then the failed inputs in sorted order."""
        if not self.errors:
            return "No errors encountered."

        by_type = Counter(record.type for record in self.errors)
        lines = [f"Error Summary ({self.error_count} errors):", "=" * 40, "Error types:"]
        lines.extend(f"  - {name}: {count}" for name, count in by_type.items())

        failed = sorted({record.item for record in self.errors if record.item})
        if failed:
            lines.append(f"\nFailed inputs ({len(failed)}):")
            lines.extend(f"  - {item}" for item in failed)
        return "\n".join(lines)

    def write_detailed_error_log(self, file_path: str) -> None:
        """
        Write every recorded error, with tracebacks where available.

        Args:
            file_path: Path to write the error log
        """
        if not self.errors:
            return
        sections = [f"{LOG_TITLE}\n{'=' * 50}\n"]
        for number, record in enumerate(self.errors, 1):
            body = "\n".join(record.log_lines())
            sections.append(f"Error #{number}\n{'-' * 20}\n{body}\n")
        try:
            with open(file_path, "w", encoding="utf-8") as f:
                f.write("\n".join(sections))
            self.logger.info(f"Detailed error log written to: {file_path}")
        except OSError as e:
            self.logger.error(f"Failed to write error log to {file_path}: {e}")

    def has_errors(self) -> bool:
        return bool(self.errors)

    def clear_errors(self) -> None:
        self.errors.clear()


# Global error handler instance
error_handler = ErrorHandler()
