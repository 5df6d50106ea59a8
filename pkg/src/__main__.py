#!/usr/bin/env python3

import argparse
import logging.config
import sys
from pathlib import Path

import yaml

from .activities import (CiInvariantsActivity, CiScanActivity, CommandContext, FpdValidateActivity,
                         GkmCheckActivity, GkmTwoQuadricsActivity, add_format_argument)
from .config import ConfigLoader
from .errors import InputError, InvalidGraph, InvariantError, PreconditionError

# Configure logging
logging_conf = Path(__file__).parent.parent / "resources" / "logging.conf"
logging.config.fileConfig(logging_conf, disable_existing_loggers=False)

logger = logging.getLogger("src")

DEFAULT_CONFIG = Path(__file__).parent.parent / "resources" / "config.yaml"

EXIT_USAGE = 2
EXIT_INPUT = 3


def register_activities() -> list:
    return [
        CiInvariantsActivity(),
        CiScanActivity(),
        FpdValidateActivity(),
        GkmCheckActivity(),
        GkmTwoQuadricsActivity(),
    ]


def build_parser(activities) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="python -m src",
                                     description="Invariants of complete intersections and circle actions.")
    parser.add_argument("--config", default=None, help="configuration file (default resources/config.yaml)")
    common = argparse.ArgumentParser(add_help=False)
    add_format_argument(common)
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    for activity in activities:
        activity.configure(subparsers, [common])
    return parser


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    activities = register_activities()
    parser = build_parser(activities)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        config = ConfigLoader.load_from_file(args.config or DEFAULT_CONFIG)
    except (OSError, ValueError, yaml.YAMLError) as exc:
        logger.error("Cannot load configuration: %s", exc)
        return EXIT_USAGE

    context = CommandContext(command=args.command, args=args, config=config, out=out)
    activity = next(a for a in activities if a.matches(context))
    logger.info("Running %s", activity.command_name)
    try:
        return activity.on_activity(context)
    except InputError as exc:
        logger.warning("Malformed input: %s", exc.diagnostic())
        return EXIT_INPUT
    except OSError as exc:
        logger.error("Cannot read input: %s", exc)
        return EXIT_INPUT
    except PreconditionError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except (InvalidGraph, InvariantError) as exc:
        logger.error("%s", exc)
        return 1


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
