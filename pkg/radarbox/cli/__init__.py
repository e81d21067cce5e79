"""
Radarbox CLI - subcommands over the pipeline.

This module provides:
    - main: the `radarbox` entry point
    - Command, register_command, CommandRegistry: the subcommand registry
    - RunManifest: per-run record of inputs, outputs and stage timings
    - run_demo: the end-to-end synthetic benchmark
    - configure_logging: stderr logging driven by RADARBOX_LOG_LEVEL
"""

from .demo import DemoResult, DemoSettings, FrameOutcome, run_demo, run_frame
from .logs import LOG_LEVEL_ENV, configure_logging, resolve_level
from .main import build_parser, error_document, main
from .manifest import RunManifest
from .registry import (
    Command,
    CommandRegistry,
    clear_registry,
    command_names,
    get_command,
    has_command,
    register_command,
)
from .stages import DetectSettings, FormatSettings, compute_format, detect

__all__ = [
    # Entry point
    "main",
    "build_parser",
    "error_document",
    # Registry
    "Command",
    "CommandRegistry",
    "register_command",
    "get_command",
    "has_command",
    "command_names",
    "clear_registry",
    # Stages
    "FormatSettings",
    "DetectSettings",
    "compute_format",
    "detect",
    # Demo
    "DemoSettings",
    "DemoResult",
    "FrameOutcome",
    "run_demo",
    "run_frame",
    # Manifest and logging
    "RunManifest",
    "configure_logging",
    "resolve_level",
    "LOG_LEVEL_ENV",
]
