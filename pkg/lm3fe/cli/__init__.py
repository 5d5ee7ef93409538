#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Command line front end: one handler per command, dispatched by name.
"""

from .commands import COMMANDS, run_command, EXIT_BUDGET_EXHAUSTED
from .runconfig import RunConfig, split_arguments
