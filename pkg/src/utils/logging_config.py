"""
Logging Configuration

Configures the root logger for command-line runs. Library modules only
create module loggers and never attach handlers themselves.
"""

import logging
from typing import Union

LOG_FORMAT = "%(asctime)s %(levelname)-8s %(name)s: %(message)s"


def setup_logging(level: Union[str, int] = "INFO", stream=None) -> logging.Logger:
    """
    Configure the root logger once.

    Args:
        level: Level name ("DEBUG", "INFO", ...) or numeric level
        stream: Optional stream for the handler (defaults to stderr)

    Returns:
        The package logger
    """
    if isinstance(level, str):
        numeric = logging.getLevelName(level.upper())
        if not isinstance(numeric, int):
            raise ValueError(f"Unknown log level: {level}")
        level = numeric

    root = logging.getLogger()
    if not root.handlers:
        handler = logging.StreamHandler(stream)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
    root.setLevel(level)
    return logging.getLogger("src")
