"""Tests for command registry module."""

from __future__ import annotations

import argparse

import pytest

from radarbox.cli import registry

# importing the entry point registers every subcommand
from radarbox.cli.main import main
from radarbox.cli.registry import (
    CommandRegistry,
    clear_registry,
    command_names,
    get_command,
    has_command,
    register_command,
)

PIPELINE = ["simulate", "process", "detect", "autolabel", "fit-demo", "eval", "demo"]


@pytest.fixture
def saved_registry():
    saved = dict(registry._registry)
    yield
    registry._registry.clear()
    registry._registry.update(saved)


class TestGlobalRegistry:
    def test_pipeline_registered(self):
        assert command_names() == PIPELINE
        assert all(has_command(name) for name in PIPELINE)

    def test_unknown(self):
        assert get_command("train") is None
        assert not has_command("train")

    def test_register_and_clear(self, saved_registry):
        @register_command("noop", "does nothing")
        def cmd_noop(args):
            return 0

        command = get_command("noop")
        assert command is not None
        assert command.help == "does nothing"
        assert command(argparse.Namespace()) == 0
        clear_registry()
        assert command_names() == []


class TestCommandRegistry:
    def test_local_shadows_global(self):
        scoped = CommandRegistry()
        scoped.register("eval", lambda args: 7)
        assert scoped.get("eval")(argparse.Namespace()) == 7
        assert get_command("eval").implementation is not scoped.get("eval").implementation
        assert scoped.names() == PIPELINE

    def test_layering(self):
        parent = CommandRegistry()
        parent.register("inspect", lambda args: 0)
        child = CommandRegistry(parent)
        child.register("plot", lambda args: 0)
        assert child.has("inspect")
        assert child.names() == [*PIPELINE, "inspect", "plot"]
        assert not parent.has("plot")

    def test_scoped_command_runs_from_main(self):
        seen = []

        def configure(parser):
            parser.add_argument("--value", type=int)

        def impl(args):
            seen.append(args.value)
            return 3

        scoped = CommandRegistry()
        scoped.register("echo-value", impl, "record the value", configure)
        assert main(["echo-value", "--value", "5"], scoped) == 3
        assert seen == [5]
