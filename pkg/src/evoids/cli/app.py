# Copyright 2025 CrownOps Engineering
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""CLI entry point and orchestration for evoids commands."""

from __future__ import annotations

import argparse
import logging
import pathlib
from collections.abc import Callable, Sequence
from contextlib import suppress
from typing import TYPE_CHECKING, Final, NoReturn

from evoids import __version__
from evoids.classifiers import default_specs
from evoids.cli.commands import bench as bench_command
from evoids.cli.commands import describe as describe_command
from evoids.cli.commands import eval as eval_command
from evoids.cli.commands import experiment as experiment_command
from evoids.cli.commands import prep as prep_command
from evoids.cli.commands import select as select_command
from evoids.cli.helpers import echo as _echo
from evoids.cli.helpers import register_argument as _register_argument
from evoids.core.model_types import LogComponent, LogFormat
from evoids.error_codes import EXIT_INTERNAL, EXIT_USAGE, error_code_for, exit_code_for
from evoids.exceptions import EvoidsError
from evoids.experiment.config import CONFIG_SCHEMA_VERSION, DEFAULT_OUTPUT_DIR
from evoids.json import dumps_pretty
from evoids.logging import LOG_FORMATS, LOG_LEVELS, configure_logging, structured_extra
from evoids.runtime import write_text_atomic

if TYPE_CHECKING:
    from evoids.cli.types import SubparserCollection

logger: logging.Logger = logging.getLogger("evoids.cli")

EVOIDS_VERSION: Final[str] = __version__
DEFAULT_CONFIG_NAME: Final[str] = "evoids.json"

CommandHandler = Callable[[argparse.Namespace], int]


class _ArgumentParser(argparse.ArgumentParser):
    """Parser whose usage errors exit with `EXIT_USAGE` instead of argparse's 2."""

    def error(self, message: str) -> NoReturn:
        self.print_usage()
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def config_template() -> dict[str, object]:
    """Return a starter experiment configuration covering both published datasets."""
    return {
        "schema_version": CONFIG_SCHEMA_VERSION,
        "datasets": [
            {"name": "CIC-DDoS2019", "kind": "cic-ddos2019", "paths": ["data/cic-ddos2019/DrDoS_DNS.csv"]},
            {
                "name": "CSE-CIC-IDS2018",
                "kind": "cse-cic-ids2018",
                "paths": [
                    "data/cse-cic-ids2018/Wednesday-14-02-2018.csv",
                    "data/cse-cic-ids2018/Thursday-15-02-2018.csv",
                    "data/cse-cic-ids2018/Friday-16-02-2018.csv",
                ],
            },
        ],
        "n_per_label": 1000,
        "split": {"ratio": 0.8},
        "models": {name: spec.model_dump(mode="json") for name, spec in default_specs().items()},
        "weights": {"w1": 1.0, "w2": 0.0, "w3": 0.0, "w4": 0.0},
        "evo": {"n_particles": 20, "max_fes": 1000},
        "fs": {"protocol": "holdout", "holdout_ratio": 0.75},
        "grid": {"without_fs": True, "with_fs": True},
        "imputation": "median",
        "averaging": "macro",
        "strict_scaling": False,
        "seed": 0,
        "output_dir": DEFAULT_OUTPUT_DIR,
    }


def write_config_template(path: pathlib.Path, *, force: bool) -> int:
    """Write the starter experiment configuration to `path`.

    Args:
        path: Destination file.
        force: Overwrite an existing file.

    Returns:
        int: Exit code (0 for success, 1 when the file exists and `force` is off).
    """
    if path.exists() and not force:
        _echo(f"[evoids] Refusing to overwrite existing file: {path}")
        _echo("Use --force if you want to replace it.")
        return EXIT_USAGE
    write_text_atomic(path, dumps_pretty(config_template()))
    _echo(f"[evoids] Wrote starter config to {path}")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    """Main CLI entry point.

    Args:
        argv: Command-line arguments to parse. If None, uses sys.argv.

    Returns:
        int: 0 on success, 1 for usage or configuration errors, 2 for data
        errors and 3 for unexpected failures.
    """
    parser = _build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    if args.version:
        _echo(f"evoids {EVOIDS_VERSION}")
        return 0
    if args.command is None:
        parser.error("No command provided.")
    _initialize_logging(args.log_format, args.log_level)
    handler = _command_handlers().get(args.command)
    if handler is None:
        parser.error(f"Unknown command {args.command}")
    return _run_handler(handler, args)


def _run_handler(handler: CommandHandler, args: argparse.Namespace) -> int:
    try:
        return handler(args)
    except EvoidsError as exc:
        code = exit_code_for(exc)
        logger.error(  # noqa: TRY400
            "%s failed: %s",
            args.command,
            exc,
            extra=structured_extra(component=LogComponent.CLI, exit_code=code, error_code=error_code_for(exc)),
        )
        _echo(f"[evoids] error {error_code_for(exc)}: {exc}", err=True)
        return code
    except Exception as exc:
        logger.exception(
            "%s crashed",
            args.command,
            extra=structured_extra(component=LogComponent.CLI, exit_code=EXIT_INTERNAL, error_code=error_code_for(exc)),
        )
        _echo(f"[evoids] internal error: {type(exc).__name__}: {exc}", err=True)
        return EXIT_INTERNAL


def _build_parser() -> argparse.ArgumentParser:
    """Build the top-level parser with the global options and every subcommand.

    Returns:
        argparse.ArgumentParser: Parser ready to parse CLI arguments.
    """
    parser = _ArgumentParser(
        prog="evoids",
        description="Energy valley optimizer feature selection for intrusion-detection datasets.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    _register_argument(
        parser,
        "--log-format",
        choices=LOG_FORMATS,
        default=None,
        help="Logging output format (falls back to EVOIDS_LOG_FORMAT, then text).",
    )
    _register_argument(
        parser,
        "--log-level",
        choices=LOG_LEVELS,
        default=None,
        help="Logging verbosity (falls back to EVOIDS_LOG_LEVEL, then info).",
    )
    _register_argument(parser, "--version", action="store_true", help="Print the evoids version and exit.")
    _register_argument(parser, "--seed", type=int, default=None, help="Master seed (config value, else 0).")
    _register_argument(
        parser,
        "--out",
        type=pathlib.Path,
        default=None,
        help=f"Output directory (config output_dir, else {DEFAULT_OUTPUT_DIR}).",
    )
    _register_argument(parser, "--config", type=pathlib.Path, default=None, help="Experiment configuration (JSON).")
    _register_argument(parser, "--threads", type=int, default=None, help="Worker threads (default 1).")
    _register_argument(
        parser,
        "--strict-scaling",
        action="store_true",
        help="Fit the min-max scaler on the training split only.",
    )
    subparsers = parser.add_subparsers(dest="command")

    prep_command.register_prep_command(subparsers)
    describe_command.register_describe_command(subparsers)
    select_command.register_select_command(subparsers)
    eval_command.register_eval_command(subparsers)
    experiment_command.register_experiment_command(subparsers)
    bench_command.register_bench_command(subparsers)

    _register_init_command(subparsers)
    return parser


def _register_init_command(subparsers: SubparserCollection) -> None:
    """Register the 'init' subcommand, which writes a starter configuration.

    Args:
        subparsers: Subparser registry where the init command will be added.
    """
    init = subparsers.add_parser(
        "init",
        help="Generate a starter experiment configuration",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    _register_argument(
        init,
        "-o",
        "--output",
        type=pathlib.Path,
        default=pathlib.Path(DEFAULT_CONFIG_NAME),
        help="Destination for the generated configuration file.",
    )
    _register_argument(init, "--force", action="store_true", help="Overwrite the output file if it already exists.")


def _initialize_logging(log_format: str | None, log_level: str | None) -> None:
    """Configure logging; failures are suppressed so a bad value never blocks a command.

    Args:
        log_format: ``text`` or ``json``, or None for the environment default.
        log_level: Level name, or None for the environment default.
    """
    with suppress(Exception):  # best-effort logger init
        _ = configure_logging(LogFormat.from_str(log_format) if log_format else None, log_level=log_level)


def _command_handlers() -> dict[str, CommandHandler]:
    """Return a mapping of command names to their handler functions.

    Returns:
        dict[str, CommandHandler]: Command name to handler.
    """
    return {
        "bench": bench_command.execute_bench,
        "describe": describe_command.execute_describe,
        "eval": eval_command.execute_eval,
        "experiment": experiment_command.execute_experiment,
        "init": _execute_init,
        "prep": prep_command.execute_prep,
        "select": select_command.execute_select,
    }


def _execute_init(args: argparse.Namespace) -> int:
    return write_config_template(args.output, force=args.force)


__all__ = ["EVOIDS_VERSION", "config_template", "main", "write_config_template"]
