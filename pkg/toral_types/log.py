import logging
import os

from rich.console import Console
from rich.logging import RichHandler

LOG_LEVEL_ENV = "TORAL_TYPES_LOG_LEVEL"


def _make_logger() -> logging.Logger:
    logger = logging.getLogger("toral_types")
    if not logger.handlers:
        handler = RichHandler(console=Console(stderr=True), show_path=False, markup=False)
        handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))
        logger.addHandler(handler)
    logger.setLevel(os.getenv(LOG_LEVEL_ENV, "INFO").upper())
    logger.propagate = False
    return logger


logger = _make_logger()
