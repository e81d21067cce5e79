"""
Subcommand registry.

Subcommands register themselves with a decorator; the entry point builds
its argument parser from whatever is registered.
"""

import argparse
from collections.abc import Callable
from dataclasses import dataclass


@dataclass
class Command:
    """
    A registered subcommand.

    Attributes:
        name: Name on the command line
        implementation: Runs the command and returns the exit status
        help: One-line description for --help
        configure: Adds the command's arguments to its subparser
    """

    name: str
    implementation: Callable[[argparse.Namespace], int]
    help: str = ""
    configure: Callable[[argparse.ArgumentParser], None] | None = None

    def __call__(self, args: argparse.Namespace) -> int:
        return self.implementation(args)

    def add_to(self, subparsers) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(self.name, help=self.help, description=self.help)
        if self.configure is not None:
            self.configure(parser)
        parser.set_defaults(command=self)
        return parser


# Global registry mapping name -> Command, in registration order
_registry: dict[str, Command] = {}


def register_command(
    name: str, help: str = "", configure: Callable[[argparse.ArgumentParser], None] | None = None
) -> Callable[[Callable], Callable]:
    """
    Decorator to register a function as a subcommand.

    Usage:
        @register_command("eval", help="Score detections", configure=_eval_arguments)
        def cmd_eval(args):
            ...
            return 0
    """

    def decorator(func: Callable[[argparse.Namespace], int]) -> Callable:
        _registry[name] = Command(name, func, help, configure)
        return func

    return decorator


def get_command(name: str) -> Command | None:
    return _registry.get(name)


def has_command(name: str) -> bool:
    return name in _registry


def command_names() -> list[str]:
    return list(_registry)


def clear_registry() -> None:
    """Clear all registered commands (useful for testing)."""
    _registry.clear()


class CommandRegistry:
    """
    Scoped registry layered over the global one.

    Local registrations shadow the parent's, which lets tests add or replace
    commands without touching the global table.
    """

    def __init__(self, parent: CommandRegistry | None = None):
        self.parent = parent
        self._local: dict[str, Command] = {}

    def register(
        self,
        name: str,
        impl: Callable[[argparse.Namespace], int],
        help: str = "",
        configure: Callable[[argparse.ArgumentParser], None] | None = None,
    ) -> None:
        self._local[name] = Command(name, impl, help, configure)

    def get(self, name: str) -> Command | None:
        if name in self._local:
            return self._local[name]
        if self.parent:
            return self.parent.get(name)
        return get_command(name)

    def has(self, name: str) -> bool:
        return self.get(name) is not None

    def names(self) -> list[str]:
        inherited = self.parent.names() if self.parent else command_names()
        return inherited + [name for name in self._local if name not in inherited]

    def commands(self) -> list[Command]:
        return [command for name in self.names() if (command := self.get(name)) is not None]
