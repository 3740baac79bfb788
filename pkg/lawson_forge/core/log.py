"""
Logging setup for lawson-forge.

Verbosity comes from the LAWSON_FORGE_LOG environment variable.
"""

import logging
import os

LOG_ENV_VAR = "LAWSON_FORGE_LOG"
_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"


def configure_logging(default: str = "WARNING") -> int:
    """Attach a stream handler to the package logger and return the chosen level"""
    name = os.environ.get(LOG_ENV_VAR, default).strip().upper()
    level = logging.getLevelName(name)
    if not isinstance(level, int):
        level = logging.WARNING

    root = logging.getLogger("lawson_forge")
    root.setLevel(level)
    if not any(getattr(h, "_lawson_forge", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(_FORMAT))
        handler._lawson_forge = True
        root.addHandler(handler)
    return level
