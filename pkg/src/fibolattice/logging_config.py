"""
Logging for fibolattice.

Everything logs under the ``fibolattice`` namespace to stderr, so stdout
carries nothing but command results. FIBOLATTICE_ENV picks a profile on
import (testing, development or production) and FIBOLATTICE_LOG_LEVEL sets
the level; production also keeps a rotating log file.
"""

import logging
import logging.handlers
import os
import sys
from pathlib import Path

from rich.console import Console
from rich.logging import RichHandler
from rich.text import Text

PACKAGE_LOGGER = "fibolattice"
DEFAULT_LOG_FILE = Path("logs") / "fibolattice.log"

FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s"
PLAIN_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# first matching group wins
MESSAGE_STYLES: tuple[tuple[tuple[str, ...], str], ...] = (
    (("mismatch", "fail"), "bold red"),
    (("wrote", "written", "export"), "cyan"),
    (("enumerat", "check", "series", "interval"), "bold blue"),
    (("complete", "passed", "done"), "bold green"),
    (("starting", "started", "initializing", "building"), "bold cyan"),
    (("interrupt", "stopped"), "bold yellow"),
)


class CustomRichHandler(RichHandler):
    """RichHandler that colors a message by the first keyword group it mentions."""

    def render_message(self, record: logging.LogRecord, message: str) -> Text:
        text = Text(message)
        lowered = message.lower()
        for keywords, style in MESSAGE_STYLES:
            if any(keyword in lowered for keyword in keywords):
                text.stylize(style)
                break
        return text


def get_log_level_from_env() -> int:
    """FIBOLATTICE_LOG_LEVEL as a logging level; unknown names fall back to INFO."""
    name = os.getenv("FIBOLATTICE_LOG_LEVEL", "INFO").upper()
    mapping = getattr(logging, "getLevelNamesMapping", lambda: logging._nameToLevel)
    level = mapping().get(name)
    return level if level is not None and name != "NOTSET" else logging.INFO


def create_file_handler(
    log_file: str | None = None,
    max_bytes: int = 10 * 1024 * 1024,
    backup_count: int = 5,
) -> logging.handlers.RotatingFileHandler:
    if log_file is None:
        DEFAULT_LOG_FILE.parent.mkdir(exist_ok=True)
        log_file = str(DEFAULT_LOG_FILE)

    handler = logging.handlers.RotatingFileHandler(
        log_file,
        maxBytes=max_bytes,
        backupCount=backup_count,
        encoding="utf-8",
    )
    handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
    return handler


def create_console_handler(use_rich: bool = True) -> logging.Handler:
    """Rich or plain handler, always on stderr."""
    if use_rich:
        return CustomRichHandler(
            console=Console(stderr=True),
            rich_tracebacks=True,
            markup=False,
            show_path=False,
        )
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(PLAIN_FORMAT, datefmt="%H:%M:%S"))
    return handler


def setup_logging(
    level: int | None = None,
    log_file: str | None = None,
    enable_file_logging: bool = False,
    enable_console_logging: bool = True,
    use_rich: bool = True,
    force_reset: bool = False,
) -> None:
    """
    Attach handlers to the package logger.

    ``level=None`` reads FIBOLATTICE_LOG_LEVEL. With ``force_reset`` the
    existing handlers are closed first, so repeated calls do not stack
    output.
    """
    package_logger = logging.getLogger(PACKAGE_LOGGER)
    if force_reset:
        for handler in list(package_logger.handlers):
            package_logger.removeHandler(handler)
            handler.close()

    if level is None:
        level = get_log_level_from_env()
    package_logger.setLevel(level)
    package_logger.propagate = False

    handlers: list[logging.Handler] = []
    if enable_console_logging:
        handlers.append(create_console_handler(use_rich=use_rich))
    if enable_file_logging:
        handlers.append(create_file_handler(log_file))
    for handler in handlers:
        handler.setLevel(level)
        package_logger.addHandler(handler)


def get_logger(name: str) -> logging.Logger:
    """Logger under the package namespace; ``__main__`` maps to ``fibolattice.main``."""
    if not name.startswith(PACKAGE_LOGGER):
        name = f"{PACKAGE_LOGGER}.main" if name == "__main__" else f"{PACKAGE_LOGGER}.{name}"
    return logging.getLogger(name)


def configure_for_testing() -> None:
    setup_logging(level=logging.WARNING, use_rich=False, force_reset=True)


def configure_for_development() -> None:
    setup_logging(use_rich=True, force_reset=True)


def configure_for_production() -> None:
    setup_logging(enable_file_logging=True, use_rich=True, force_reset=True)


PROFILES = {
    "testing": configure_for_testing,
    "development": configure_for_development,
    "production": configure_for_production,
}

if not logging.getLogger(PACKAGE_LOGGER).handlers:
    PROFILES.get(
        os.getenv("FIBOLATTICE_ENV", "development").lower(), configure_for_development
    )()
