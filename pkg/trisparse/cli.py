"""Command-line entry point."""
import argparse
import logging
import random
import sys

from trisparse import __version__
from trisparse.commands import COMMANDS
from trisparse.commands.common import input_digest
from trisparse.config import get_config
from trisparse.data_loader import get_data_loader
from trisparse.errors import (DisconnectedError, EvaluationError, NonOrientableError, NotClosedError,
                              SearchSpaceError, VerificationError)
from trisparse.report import EXIT_FORMAT, EXIT_PRECONDITION, EXIT_VERIFICATION, RunReport

logger = logging.getLogger(__name__)

PRECONDITION_ERRORS = (NotClosedError, NonOrientableError, DisconnectedError, SearchSpaceError,
                       EvaluationError)
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')


class _Parser(argparse.ArgumentParser):
    """Usage errors are format errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FORMAT, f"{self.prog}: error: {message}\n")


def version_string() -> str:
    cfg = get_config()
    return (f"trisparse {__version__} tri-format={cfg.TRI_FORMAT_VERSION} "
            f"diagram-format={cfg.DIAGRAM_FORMAT_VERSION} pace={cfg.PACE_FORMAT_VERSION}")


def create_parser() -> argparse.ArgumentParser:
    """Top-level parser with one subcommand per command module."""
    parser = _Parser(prog='trisparse',
                     description='Triangulations, Heegaard diagrams and Kuperberg invariants.')
    parser.add_argument('--version', action='version', version=version_string())
    parser.add_argument('--seed', type=int, default=None,
                        help='seed for randomized helpers (default DEFAULT_SEED)')
    parser.add_argument('--log-level', choices=LOG_LEVELS, default=None,
                        help='log level on stderr (default LOG_LEVEL)')
    subparsers = parser.add_subparsers(dest='command', metavar='command', parser_class=_Parser)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv=None) -> int:
    """
    Run one command and print its report on stdout.

    Returns:
        0 on success, 1 for parse and format errors, 2 for unmet
        preconditions (resource guards included), 3 when a verification
        check fails.
    """
    parser = create_parser()
    args = parser.parse_args(argv)
    cfg = get_config()
    logging.basicConfig(level=args.log_level or cfg.LOG_LEVEL, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_FORMAT

    seed = cfg.DEFAULT_SEED if args.seed is None else args.seed
    random.seed(seed)
    logger.debug("seed %d", seed)

    errors = get_data_loader().validate_data()
    if errors:
        logger.warning("Data validation warnings: %s", errors)

    try:
        digest = input_digest(args.path)
    except OSError as exc:
        report = RunReport(args.command, 'none')
        report.fail(EXIT_FORMAT, exc)
        sys.stdout.write(report.render())
        return report.status

    report = RunReport(args.command, digest)
    try:
        args.handler(args, report)
    except VerificationError as exc:
        report.fail(EXIT_VERIFICATION, exc)
        report.extend((f"diff{i}", diff) for i, diff in enumerate(exc.diffs, 1))
        logger.error("verification failed: %s", exc)
    except PRECONDITION_ERRORS as exc:
        report.fail(EXIT_PRECONDITION, exc)
        logger.error("%s", exc)
    except (ValueError, OSError) as exc:
        report.fail(EXIT_FORMAT, exc)
        logger.error("%s", exc)
    sys.stdout.write(report.render())
    return report.status


if __name__ == '__main__':
    sys.exit(main())
