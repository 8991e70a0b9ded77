"""
CLI main application module.

This module contains the main entry point and dispatches the offline,
online, benchmark and inspect commands. Failures are mapped to exit codes:
2 for configuration and input errors, 3 for numerical failures, 4 for
missing or corrupted artifacts.
"""

import json
import logging
import sys
from argparse import Namespace
from typing import Optional, Sequence

from ..config import ConfigError, Env
from ..constants import (
    EXIT_ARTIFACT_MISMATCH,
    EXIT_CONFIG_ERROR,
    EXIT_INTERRUPTED,
    EXIT_NUMERICAL_FAILURE,
    EXIT_SUCCESS,
    EXIT_UNEXPECTED_ERROR,
)
from ..core.pipeline import dry_run, resolve_case_config, run_benchmark, run_inspect, run_offline, run_online
from ..exceptions import ArtifactError, NumericalError, StageError
from ..utils import has_offline_artifacts, is_output_dir_writable, parse_int_list, setup_logging
from .parser import create_argument_parser

logger = logging.getLogger(__name__)


def _offline(args: Namespace, env: Env) -> int:
    config = resolve_case_config(args.config)
    if args.dry_run:
        logger.info("=" * 60)
        logger.info("DRY RUN MODE - CONFIG VALIDATED, NOTHING SOLVED")
        logger.info("=" * 60)
        print(json.dumps(dry_run(config, env, args.n), indent=2, sort_keys=True))
        return EXIT_SUCCESS

    ok, reason = is_output_dir_writable(args.out)
    if not ok:
        logger.error(f"Invalid output directory: {reason}")
        return EXIT_CONFIG_ERROR
    manifest = run_offline(config, args.out, env, args.n)
    logger.info(
        f"🎉 Offline artifacts for {manifest.case_id} written to {args.out} "
        f"(N_tot={manifest.dimensions.get('n_tot')})"
    )
    return EXIT_SUCCESS


def _require_artifacts(out_dir: str) -> bool:
    ok, reason = has_offline_artifacts(out_dir)
    if not ok:
        logger.error(reason)
    return ok


def _online(args: Namespace, env: Env) -> int:
    if not _require_artifacts(args.out):
        return EXIT_ARTIFACT_MISMATCH
    path = run_online(args.out, args.mu, args.mu_file, args.test_size, args.compare_fe, args.results)
    logger.info(f"Online results written to {path}")
    return EXIT_SUCCESS


def _benchmark(args: Namespace, env: Env) -> int:
    if not _require_artifacts(args.out):
        return EXIT_ARTIFACT_MISMATCH
    n_range = parse_int_list(args.n) if args.n else None
    path, rows = run_benchmark(args.out, n_range, args.test_size, args.results)
    logger.info(f"Benchmark table with {len(rows)} rows written to {path}")
    return EXIT_SUCCESS


def _inspect(args: Namespace, env: Env) -> int:
    if args.out and not _require_artifacts(args.out):
        return EXIT_ARTIFACT_MISMATCH
    summary = run_inspect(args.out, args.config)
    print(json.dumps(summary, indent=2, sort_keys=True, default=str))
    return EXIT_SUCCESS


COMMANDS = {
    "offline": _offline,
    "online": _online,
    "benchmark": _benchmark,
    "inspect": _inspect,
}


def run_command(args: Namespace, env: Env) -> int:
    """
    Run one parsed command and map its failure to an exit code.

    Returns:
        Exit code
    """
    try:
        return COMMANDS[args.command](args, env)
    except KeyboardInterrupt:
        logger.warning("Interrupted by user (Ctrl+C)")
        return EXIT_INTERRUPTED
    except ArtifactError as e:
        logger.error(f"Artifact error: {e}")
        return EXIT_ARTIFACT_MISMATCH
    except (StageError, NumericalError) as e:
        logger.error(f"Numerical failure: {e}")
        return EXIT_NUMERICAL_FAILURE
    except (ConfigError, ValueError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG_ERROR
    except OSError as e:
        logger.error(f"File system error: {e}")
        return EXIT_CONFIG_ERROR
    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        return EXIT_UNEXPECTED_ERROR


def main(argv: Optional[Sequence[str]] = None):
    """Main entry point for the script."""
    parser = create_argument_parser()
    args = parser.parse_args(argv)

    setup_logging(verbose=getattr(args, "verbose", False))

    try:
        env = Env.load(cli_args=args)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        sys.exit(EXIT_CONFIG_ERROR)

    code = run_command(args, env)
    if code != EXIT_SUCCESS:
        sys.exit(code)
