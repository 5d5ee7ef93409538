#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Optional run registry.
"""

from lm3fe.common import LOG
from . import models, engine


def start(db_uri, log_queries=False):
    """Will setup connection and ensure that all tables exist.
    MUST be called prior to any operation."""
    LOG.info('Connecting to DB...')
    engine.connect(db_uri, log_queries)

    # Create tables if they don't exist.
    LOG.info('Checking tables in the DB...')
    models.check()

    LOG.info('Done')
