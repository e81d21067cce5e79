"""
Logging setup for the command line.

Library modules only create loggers; this installs the one stderr handler,
with the level taken from RADARBOX_LOG_LEVEL (default WARNING).
"""

import logging
import os
import sys
from typing import TextIO

from radarbox.core import ConfigError

LOG_LEVEL_ENV = "RADARBOX_LOG_LEVEL"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
DEFAULT_LEVEL = "WARNING"


class _RadarboxHandler(logging.StreamHandler):
    pass


def resolve_level(name: str | None = None) -> int:
    """
    Level from `name`, else the environment, else WARNING.

    Raises:
        ConfigError: For an unknown level name.
    """
    raw = name if name is not None else os.environ.get(LOG_LEVEL_ENV) or DEFAULT_LEVEL
    level = logging.getLevelNamesMapping().get(raw.strip().upper())
    if level is None:
        raise ConfigError(f"{LOG_LEVEL_ENV}: unknown log level '{raw}'")
    return level


def configure_logging(level: str | None = None, stream: TextIO | None = None) -> logging.Handler:
    """Install (or replace) the radarbox stderr handler."""
    logger = logging.getLogger("radarbox")
    resolved = resolve_level(level)
    for handler in list(logger.handlers):
        if isinstance(handler, _RadarboxHandler):
            logger.removeHandler(handler)
    handler = _RadarboxHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(resolved)
    return handler
