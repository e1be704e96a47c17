"""Command-line surface: subcommands, sweep runner and the built-in suite."""
from .main import build_parser, main, run_command

__all__ = ["build_parser", "main", "run_command"]
