from .main import build_parser, run
from .registry import get_all_commands, get_command, register_command

__all__ = [
    'build_parser',
    'run',
    'get_all_commands',
    'get_command',
    'register_command',
]
