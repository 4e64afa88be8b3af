"""Console and file logging setup."""

import logging
import sys
from typing import Dict, Optional

from colorama import Fore, Style
from colorama import deinit as colorama_deinit
from colorama import init as colorama_init

PLAIN_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
FILE_FORMAT = "%(asctime)s [%(levelname)s] %(name)s:%(lineno)d - %(message)s"

# dependency loggers that are too chatty at INFO
QUIET_LIBRARIES = ("dotenv",)


class LoggingHandler:
    """
    Configures the root logger: coloured console output and an optional log file.
    """

    def __init__(self):
        self.color_enabled = True
        self.formatters: Dict[str, logging.Formatter] = {
            "plain": logging.Formatter(PLAIN_FORMAT),
            "file": logging.Formatter(FILE_FORMAT),
            "color": ColoredFormatter(),
        }

    def setup_logging(
        self,
        log_level: str = "INFO",
        log_file: Optional[str] = None,
        quiet: bool = False,
        plain: bool = False,
    ) -> None:
        """
        Configure logging with the specified parameters.

        Args:
            log_level: Logging level (DEBUG, INFO, WARNING, ERROR)
            log_file: Optional file path for log output
            quiet: Whether to suppress console output
            plain: Whether to disable colored output
        """
        self._setup_colors(plain)

        handlers = []
        if not quiet:
            # stdout is reserved for command output
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setFormatter(
                self.formatters["color"] if self.color_enabled else self.formatters["plain"]
            )
            handlers.append(console_handler)

        if log_file:
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
            file_handler.setFormatter(self.formatters["file"])
            handlers.append(file_handler)

        if not handlers:
            handlers.append(logging.NullHandler())

        logging.basicConfig(
            level=getattr(logging, log_level.upper(), logging.INFO),
            handlers=handlers,
            force=True,
        )
        for name in QUIET_LIBRARIES:
            logging.getLogger(name).setLevel(logging.WARNING)

    def _setup_colors(self, plain: bool) -> None:
        self.color_enabled = not plain
        if plain:
            colorama_deinit()
        else:
            colorama_init(autoreset=True)


class ColoredFormatter(logging.Formatter):
    """
    Formatter that colours the whole line by level.
    """

    COLORS = {
        logging.DEBUG: Fore.CYAN,
        logging.INFO: Fore.GREEN,
        logging.WARNING: Fore.YELLOW,
        logging.ERROR: Fore.RED,
        logging.CRITICAL: Fore.MAGENTA + Style.BRIGHT,
    }

    def __init__(self):
        super().__init__(PLAIN_FORMAT)
        self._by_level = {
            level: logging.Formatter(f"{color}{PLAIN_FORMAT}{Style.RESET_ALL}")
            for level, color in self.COLORS.items()
        }

    def format(self, record: logging.LogRecord) -> str:
        formatter = self._by_level.get(record.levelno)
        if formatter is None:
            return super().format(record)
        return formatter.format(record)


# Global logging handler instance
logging_handler = LoggingHandler()
