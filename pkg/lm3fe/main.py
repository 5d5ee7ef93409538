#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
lm3fe entry point.
"""

# MUST be the first import, DO NOT REMOVE
import lm3fe.properties

import lm3fe.persistence as persistence

from lm3fe.common import LOG, LM3FEError
from lm3fe.cli import RunConfig, run_command, split_arguments

from tornado.options import options
from tornado.log import enable_pretty_logging

import tornado.options

import sys


#: System wide configuration file, read when present.
SYSTEM_CONFIG = '/etc/lm3fe.conf'


def parse_arguments(args, parser):
    """Read configuration files, run config and flags into `parser`.
    Returns the command name (None when neither the flags nor the run
    config give one)."""
    try:
        parser.parse_config_file(SYSTEM_CONFIG, final=False)
    except IOError:
        LOG.warning('Config file not found, using defaults and command line.')

    command, flags, positional = split_arguments(parser, args[1:])
    if positional:
        raise tornado.options.Error('Unexpected arguments: {}'.format(' '.join(positional)))

    # First pass only locates the config file and the run config.
    parser.parse_command_line([args[0]] + flags, final=False)
    if parser.config:
        parser.parse_config_file(parser.config, final=False)

    run_flags = []
    if parser.run_config:
        run = RunConfig.load(parser.run_config)
        run_flags = run.as_arguments(parser)
        command = command or run.mode

    parser.parse_command_line([args[0]] + run_flags + flags, final=False)
    parser.run_parse_callbacks()
    return command


def diagnostic(error):
    """First line of the error message, or the error type when empty."""
    lines = str(error).splitlines()
    return lines[0] if lines else type(error).__name__


def main(args=None, parser=options):
    """Entry point for lm3fe. Returns the exit status."""
    enable_pretty_logging()
    args = sys.argv if args is None else args

    try:
        command = parse_arguments(args, parser)
        if command is None:
            raise tornado.options.Error('No command given, expected one of fit, select, '
                'transform, eval, synth, baseline, grid, runs.')
        if parser.db_uri:
            persistence.start(parser.db_uri, parser.log_queries)
        return run_command(command, parser)
    except (LM3FEError, OSError, ValueError, tornado.options.Error) as error:
        LOG.debug('Command failed', exc_info=True)
        sys.stderr.write('lm3fe: {}\n'.format(diagnostic(error)))
        return 1
