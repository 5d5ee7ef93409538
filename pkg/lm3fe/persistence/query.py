#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Common query helpers. These are shortcuts to queries performed often
by the command line front end.
"""

from sqlalchemy import desc

from .engine import persist, latest, count
from .models import FitRun, Evaluation


## Getters ##

def get_latest_fit_runs(session, limit=20, offset=0):
    """The `limit` newest fit runs."""
    return latest(session, FitRun, limit=limit, offset=offset)


def get_latest_evaluations(session, limit=20, offset=0):
    return latest(session, Evaluation, limit=limit, offset=offset)


def get_number_of_fit_runs(session):
    return count(session, FitRun)


def get_best_evaluation(session, method, metric='accuracy'):
    """Evaluation of `method` with the highest `metric`, None if there is
    no such evaluation."""
    column = getattr(Evaluation, metric)
    return (session.query(Evaluation)
        .filter(Evaluation.method == method, column.isnot(None))
        .order_by(desc(column), Evaluation.id)
        .first())


## Loggers ##

def log_fit_run(session, manifest, config, model, trace):
    """Persist the outcome of a fit to the DB."""
    return persist(session, FitRun(
        manifest, config, model.latent_dim, trace.sweeps,
        trace.outer_objective[-1], trace.converged
    ))


def log_evaluation(session, method, manifest, report):
    """Persist an EvalReport to the DB."""
    return persist(session, Evaluation(method, manifest, report))
