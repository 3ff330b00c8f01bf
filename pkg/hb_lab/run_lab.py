"""Command-line startup script."""

import sys

from hb_lab.lab.cli import main as cli_main
from hb_lab.utils import get_logger

logger = get_logger()


def main():
    """Run the heavy ball lab command line."""
    sys.exit(cli_main())


if __name__ == '__main__':
    main()
