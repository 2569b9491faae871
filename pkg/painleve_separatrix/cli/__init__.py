"""
Command Line Interface Package for the Painlevé IV Separatrix Solver

- args.py: Sub-commands and argument validation
- config.py: RunConfig from defaults, config file and flags
- formatters.py: CSV/JSON artifacts, traces and stderr summaries
- logging_setup.py: Logging configuration
- pipeline.py: One function per sub-command
- main.py: Entry point and exit codes

License: MIT
"""

from . import main
from .main import main as main_function

__all__ = ["main", "main_function"]
