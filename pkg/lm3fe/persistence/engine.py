#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Query engine internals: functions to store, retrieve and count registry
rows independently from the model.
"""

from contextlib import contextmanager

from sqlalchemy import desc, create_engine
from sqlalchemy.orm import sessionmaker, scoped_session

from lm3fe.common import LOG, ConfigError


#: Global session and engine used by all engine methods.
#: Call `connect()` to initialize.
Session = None
Engine = None


def connect(db_uri, log_queries=False):
    """Open a connection to the registry DB at `db_uri`."""
    global Session, Engine
    Engine = create_engine(db_uri, echo=log_queries)
    session_factory = sessionmaker(bind=Engine, expire_on_commit=False)
    Session = scoped_session(session_factory)


def disconnect():
    global Session, Engine
    if Session is not None:
        Session.remove()
    if Engine is not None:
        Engine.dispose()
    Session = Engine = None


@contextmanager
def session_scope():
    """Registry transaction: commits when the block exits, rolls back and
    re-raises otherwise. Rows stay readable after the session closes."""
    if Session is None:
        raise ConfigError('Run registry not connected, pass --db-uri.')
    session = Session()
    try:
        yield session
        session.commit()
    except BaseException:
        LOG.warning('Registry write failed, nothing was recorded.')
        session.rollback()
        raise
    finally:
        session.close()


def persist(session, row):
    """Append `row` to the registry and assign its id."""
    LOG.debug('Recording {}'.format(row))
    session.add(row)
    session.flush()
    return row


def latest(session, model, limit=1, offset=0):
    """Rows of `model`, newest first. With `limit=1` the single newest row
    (or None), otherwise a list."""
    rows = (session.query(model)
        .order_by(desc(model.timestamp), desc(model.id))
        .offset(offset)
        .limit(limit)
        .all())
    if limit == 1:
        return rows[0] if rows else None
    return rows


def count(session, model):
    """Number of `model` rows in the registry."""
    return session.query(model).count()
