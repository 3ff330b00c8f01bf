"""Command-line interface."""

from .base import EXIT_CONFIG, EXIT_DIVERGENT, EXIT_FAIL, EXIT_PASS, Command, CommandFactory, register_command
from .main import build_parser, main
