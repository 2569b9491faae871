"""
Main CLI Orchestration Module

Entry point of the painleve-separatrix CLI: parses arguments, merges the
configuration, runs the command and maps failures onto exit codes.

Exit codes:
    * 0: Success
    * 2: Usage or configuration error
    * 3: Numerical failure; ``error_report.json`` is written to the output directory
    * 4: Reproduction mismatch against the published values

License: MIT
"""

import json
import logging
import sys
import time
from datetime import datetime
from pathlib import Path
from typing import Optional, Sequence

from painleve_separatrix import __version__
from painleve_separatrix.exceptions import (
    PainleveConfigurationError,
    PainleveDomainError,
    PainleveEigenvalueError,
    PainleveError,
    PainleveExtrapolationError,
    PainleveIntegrationError,
    PainleveReproductionError,
    wrap_numerical_error,
)
from painleve_separatrix.instrumentation import SolveInstrumentation

from .args import parse_args
from .config import RunConfig, build_config
from .formatters import print_error_suggestions, print_performance_summary, print_summary_to_stderr, write_error_report
from .logging_setup import setup_logging
from .pipeline import run

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_MISMATCH = 4


def _numerical_failure(
    error: BaseException, config: Optional[RunConfig], fallback_dir: Path, command: Optional[str], start_time: float
) -> int:
    elapsed = time.time() - start_time
    output_dir = config.output_dir if config is not None else fallback_dir
    report = write_error_report(output_dir, error, command, elapsed)
    logger.error(f"Numerical failure after {elapsed:.2f}s: {error}")
    print(f"❌ {type(error).__name__}: {getattr(error, 'message', error)}", file=sys.stderr)
    if report is not None:
        print(f"Diagnostics written to {report}", file=sys.stderr)
    print_error_suggestions(debug=logger.isEnabledFor(logging.DEBUG))
    return EXIT_NUMERICAL


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Main entry point for the CLI application.

    Args:
        argv: Arguments without the program name; None reads ``sys.argv``

    Returns:
        Exit code (see module docstring)
    """
    start_time = time.time()
    args = None
    config: Optional[RunConfig] = None

    try:
        args = parse_args(argv)
        setup_logging(debug=args.debug, log_file=args.log_file, quiet=args.quiet)
        config = build_config(args)

        if not args.quiet:
            timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
            print(f"Painlevé IV Separatrix Solver v{__version__} - {timestamp}", file=sys.stderr)
            print(
                f"Command: {config.command}  kind: {config.kind}  workers: {config.workers}  "
                f"method: {config.method}",
                file=sys.stderr,
            )

        instrumentation = SolveInstrumentation() if args.instrument else None
        result = run(config, instrumentation)
        elapsed = time.time() - start_time

        if instrumentation is not None:
            summary = instrumentation.get_performance_summary()
            if config.output_format == "json":
                target = config.output_dir / "performance.json"
                target.write_text(json.dumps(summary, indent=2, default=str) + "\n", encoding="utf-8")
                result.artifacts.append(target)

        if not args.quiet:
            print_summary_to_stderr(result.title, result.lines, result.artifacts)
            if instrumentation is not None:
                print_performance_summary(instrumentation.get_performance_summary())
            print(f"⏱️  Completed in {elapsed:.1f}s", file=sys.stderr)

        logger.info(f"{config.command} finished in {elapsed:.2f}s")
        return EXIT_OK

    except PainleveConfigurationError as e:
        elapsed = time.time() - start_time
        logger.error(f"Configuration error after {elapsed:.2f}s: {e}")
        print(f"Configuration error: {e}", file=sys.stderr)
        print("Run with --help for usage information", file=sys.stderr)
        return EXIT_CONFIG

    except PainleveReproductionError as e:
        elapsed = time.time() - start_time
        logger.error(f"Reproduction mismatch after {elapsed:.2f}s: {e}")
        print(f"❌ {e.message}", file=sys.stderr)
        for name in e.details.get("failed", []):
            print(f"  - {name}", file=sys.stderr)
        return EXIT_MISMATCH

    except (
        PainleveIntegrationError,
        PainleveEigenvalueError,
        PainleveExtrapolationError,
        PainleveDomainError,
    ) as e:
        command = args.command if args is not None else None
        return _numerical_failure(e, config, Path("."), command, start_time)

    except KeyboardInterrupt:
        elapsed = time.time() - start_time
        logger.error(f"Operation cancelled by user after {elapsed:.2f}s")
        print(f"Operation cancelled by user after {elapsed:.2f}s", file=sys.stderr)
        return 1

    except SystemExit:
        # argparse exits on --help and on usage errors
        raise

    except PainleveError as e:
        command = args.command if args is not None else None
        return _numerical_failure(e, config, Path("."), command, start_time)

    except Exception as e:
        command = args.command if args is not None else None
        wrapped = wrap_numerical_error(e, command or "cli")
        return _numerical_failure(wrapped, config, Path("."), command, start_time)


if __name__ == "__main__":
    sys.exit(main() or 0)
