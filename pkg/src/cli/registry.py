"""
Command registry - central registration of all CLI subcommands.
"""
import argparse
from dataclasses import dataclass
from typing import Callable, Dict

# A handler receives the parsed arguments and returns the exit code
CommandFunc = Callable[[argparse.Namespace], int]
ConfigureFunc = Callable[[argparse.ArgumentParser], None]


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    configure: ConfigureFunc
    handler: CommandFunc


# Internal registry
_commands: Dict[str, Command] = {}


def register_command(name: str, help: str, configure: ConfigureFunc, handler: CommandFunc) -> None:
    """Register a subcommand."""
    _commands[name] = Command(name=name, help=help, configure=configure, handler=handler)


def get_all_commands() -> Dict[str, Command]:
    """Get all registered commands, in registration order."""
    return _commands.copy()


def get_command(name: str) -> Command:
    if name not in _commands:
        raise KeyError(f"Command '{name}' not found. Available: {list(_commands.keys())}")
    return _commands[name]


def _register_builtin_commands():
    from . import commands

    register_command("validate", "Check every face of a radius vector", commands.configure_validate, commands.run_validate)
    register_command("curvature", "Print the discrete curvature table", commands.configure_curvature, commands.run_curvature)
    register_command("solve", "Solve the prescribed-curvature problem", commands.configure_solve, commands.run_solve)
    register_command("compare", "Check the Schwarz-Pick comparison for two metrics", commands.configure_compare, commands.run_compare)
    register_command("counterexample", "Reproduce the I >= 1 counterexample", commands.configure_counterexample, commands.run_counterexample)
    register_command("degenerate", "Scan curvature sums as radii shrink", commands.configure_degenerate, commands.run_degenerate)
    register_command("double", "Double a surface with boundary", commands.configure_double, commands.run_double)


# Register on module import
_register_builtin_commands()
