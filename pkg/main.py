#!/usr/bin/env python3
"""
Main entry point for energycov

Subcommands spectrum | solve | verify | simulate, each driven by one key = value config
file. Exit codes: 0 ok, 2 config error, 3 computation error, 4 verification failure.
"""

import argparse
import logging
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli import COMMANDS, run_command
from src.config import ConfigManager
from src.errors import EXIT_COMPUTATION, EXIT_OK, ConfigError, EnergyCovError
from src.storage import setup_logging

logger = logging.getLogger("energycov")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="energycov",
        description="Steady-state energy covariance of dissipative stochastic systems",
    )
    parser.add_argument("command", choices=sorted(COMMANDS), help="Command to run")
    parser.add_argument("--config", metavar="PATH", help="Config file (key = value lines)")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override a config key; repeatable, applied in order",
    )
    parser.add_argument("--output", metavar="PATH", help="Output file, '-' for stdout")
    parser.add_argument("--threads", type=int, default=1, metavar="N", help="Worker threads (default 1)")
    parser.add_argument("--seed", type=int, metavar="U64", help="Simulation and sampling seed")
    parser.add_argument(
        "--log-level",
        default="INFO",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Log level (logs go to stderr)",
    )
    parser.add_argument("--log-file", metavar="DIR", help="Also write rotating log files to DIR")
    return parser


def main(argv=None) -> int:
    """Run one command and return its exit code."""
    args = build_parser().parse_args(argv)
    setup_logging(
        log_dir=args.log_file,
        log_level=getattr(logging, args.log_level),
        log_to_file=args.log_file is not None,
    )

    overrides = list(args.overrides)
    if args.seed is not None:
        overrides.append(f"sim.seed={args.seed}")
    if args.output is not None:
        overrides.append(f"output.path={args.output}")

    try:
        if args.threads < 1:
            raise ConfigError([f"--threads: must be >= 1, got {args.threads}"])
        config = ConfigManager().load(args.config, overrides)
        run_command(args.command, config, threads=args.threads)
    except EnergyCovError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except KeyboardInterrupt:
        logger.error("Interrupted")
        return EXIT_COMPUTATION
    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        logger.debug("Traceback", exc_info=True)
        return EXIT_COMPUTATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
