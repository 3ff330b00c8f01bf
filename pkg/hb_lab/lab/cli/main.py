"""Argument parsing and exit-code mapping of the ``hblab`` command line."""

import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

from ...utils import get_logger
from ...version import __version__
from ..model import ConfigError, LabError
from . import commands  # noqa: F401
from .base import EXIT_CONFIG, EXIT_FAIL, CommandFactory

logger = get_logger()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', default=None, help='Experiment config file')
    common.add_argument('--out', default=None, help='Output directory (default: $HBLAB_OUT)')
    common.add_argument('--seed', type=int, default=None, help='Override the config seed')
    common.add_argument('--parallelism', type=int, default=None, help='Sweep workers')
    common.add_argument('--format', choices=['csv', 'txt'], default='txt', help='Output format')

    parser = argparse.ArgumentParser(prog='hblab', description='Heavy ball numerical laboratory')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    subparsers = parser.add_subparsers(dest='command', required=True)
    for name in CommandFactory.get_available_commands():
        command_class = CommandFactory.get_command_class(name)
        sub = subparsers.add_parser(
            name,
            parents=[common],
            help=command_class.summary(),
            description=command_class.description(),
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        command_class.add_arguments(sub)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run the sub-command and map failures to exit codes.

    Exit codes: 0 pass, 1 fail, 2 divergent, 3 configuration error.
    """
    args = build_parser().parse_args(argv)
    command = CommandFactory.create_command(args.command)
    try:
        return command.run(args)
    except (ConfigError, ValidationError, OSError) as e:
        logger.error(f'configuration error: {e}')
        print(f'error: {e}', file=sys.stderr)
        return EXIT_CONFIG
    except LabError as e:
        logger.error(f'{args.command} failed: {e}')
        print(f'error: {e}', file=sys.stderr)
        return EXIT_CONFIG if isinstance(e, ValueError) else EXIT_FAIL
