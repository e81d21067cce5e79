"""
Command line entry point.

Exit status: 0 on success, 1 on a radarbox or file error (reported as one
JSON object on stderr), 2 on bad arguments (argparse).
"""

import argparse
import json
import sys
from typing import Any, TextIO

from radarbox import __version__
from radarbox.core import RadarboxError, StageError

from . import commands, demo  # noqa: F401  (registers the subcommands)
from .logs import configure_logging
from .registry import CommandRegistry


def build_parser(registry: CommandRegistry | None = None) -> argparse.ArgumentParser:
    registry = registry or CommandRegistry()
    parser = argparse.ArgumentParser(
        prog="radarbox", description="Synthetic FMCW radar detection pipeline"
    )
    parser.add_argument("--version", action="version", version=f"radarbox {__version__}")
    parser.add_argument("--log-level", help="overrides RADARBOX_LOG_LEVEL")
    subparsers = parser.add_subparsers(title="commands", required=True, metavar="COMMAND")
    for command in registry.commands():
        command.add_to(subparsers)
    return parser


def error_document(exc: BaseException) -> dict[str, Any]:
    document: dict[str, Any] = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, StageError):
        document["stage"] = exc.stage
    return document


def report_error(exc: BaseException, stream: TextIO | None = None) -> None:
    print(json.dumps(error_document(exc)), file=stream or sys.stderr)


def main(argv: list[str] | None = None, registry: CommandRegistry | None = None) -> int:
    args = build_parser(registry).parse_args(argv)
    try:
        configure_logging(args.log_level)
        return args.command(args)
    except (RadarboxError, OSError) as exc:
        report_error(exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
