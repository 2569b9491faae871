"""
Logging setup for the painleve-separatrix CLI.

Console output goes to stderr so that tables written to stdout stay clean.
The per-step loggers of the path integrator and the pole navigator are kept
at INFO unless ``--debug`` is given; a log file always receives everything.

License: MIT
"""

import logging
import sys
from typing import Optional

CONSOLE_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"
DETAILED_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(funcName)s:%(lineno)d - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# Emit a line per accepted step or bisection iteration at DEBUG
STEP_LOGGERS = (
    "painleve_separatrix.solver.integrator",
    "painleve_separatrix.solver.navigator",
    "painleve_separatrix.eigensolver",
)


def setup_logging(debug: bool = False, log_file: Optional[str] = None, quiet: bool = False) -> None:
    """
    Configure the root logger for a CLI run.

    Args:
        debug: Show DEBUG records on the console, with source locations
        log_file: Also write every record, DEBUG included, to this file
        quiet: Only warnings and errors reach the console
    """
    if debug:
        console_level = logging.DEBUG
    elif quiet:
        console_level = logging.WARNING
    else:
        console_level = logging.INFO

    console = logging.StreamHandler(sys.stderr)
    console.setLevel(console_level)
    console.setFormatter(logging.Formatter(DETAILED_FORMAT if debug else CONSOLE_FORMAT, datefmt=DATE_FORMAT))
    handlers: list[logging.Handler] = [console]

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(DETAILED_FORMAT, datefmt=DATE_FORMAT))
        handlers.append(file_handler)

    root_level = logging.DEBUG if debug or log_file else console_level
    logging.basicConfig(level=root_level, handlers=handlers, force=True)

    step_level = logging.DEBUG if debug or log_file else logging.INFO
    for name in STEP_LOGGERS:
        logging.getLogger(name).setLevel(step_level)

    # numpy overflow and scipy integration warnings arrive as RuntimeWarning
    logging.captureWarnings(True)
    logging.getLogger("py.warnings").setLevel(logging.DEBUG if debug else logging.WARNING)

    logger = logging.getLogger(__name__)
    logger.debug(f"Logging configured: console={logging.getLevelName(console_level)}, debug={debug}")
    if log_file:
        logger.debug(f"Logging to file: {log_file}")
