#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Reference pipelines (best single modality, plain concatenation) and the
MTFS/RFS selection and transformation pipelines.
"""

from lm3fe.common import LOG, ConfigError
from lm3fe.extraction.evaluation import (split_dataset, evaluate_concatenation,
    evaluate_modality, evaluate_features, evaluate_selection)
from .rfs import ConcatProblem, solve_rfs, solve_mtfs, baseline_transform


PIPELINES = ('BSF', 'CAT')
SOLVERS = {
    'rfs': solve_rfs,
    'mtfs': solve_mtfs,
}


def _train_test(data, test, test_fraction, seed):
    if test is None:
        return split_dataset(data, test_fraction, seed)
    return data, test


def run_reference(data, pipeline, test=None, test_fraction=0.3, seed=0):
    """1-NN report of a reference pipeline. BSF reports the best single
    modality by accuracy (ties to the lower index), CAT the concatenation.
    Without an explicit test set `data` is split with `seed`."""
    pipeline = pipeline.upper()
    if pipeline not in PIPELINES:
        raise ConfigError('Unknown reference pipeline {}'.format(pipeline))
    train, test = _train_test(data, test, test_fraction, seed)

    if pipeline == 'CAT':
        return evaluate_concatenation(train, test)

    best, best_v = None, None
    for v in range(train.n_modalities):
        report = evaluate_modality(train, test, v)
        LOG.debug('Modality {} accuracy {:.4f}'.format(v, report.accuracy))
        if best is None or report.accuracy > best.accuracy:
            best, best_v = report, v
    LOG.info('Best single modality is {}'.format(best_v))
    return best


def fit_baseline(data, method, gamma, max_iters=100, tol=1e-6, bias=True):
    """Fit RFS or MTFS on the concatenated features of `data`.
    Returns (solution, ranking)."""
    try:
        solver = SOLVERS[method.lower()]
    except KeyError:
        raise ConfigError('Unknown baseline method {}'.format(method))
    problem = ConcatProblem.from_dataset(data, gamma, bias=bias)
    solution = solver(problem, max_iters=max_iters, tol=tol)
    LOG.info('{} finished in {} iterations (converged: {}, ridge bumps: {})'.format(
        method.upper(), solution.iterations, solution.converged, solution.ridge_bumps
    ))
    return solution, solution.ranking(data.modality_dims)


def run_baseline_selection(train, test, method, gamma, fractions, max_iters=100, tol=1e-6):
    """MTFS/RFS as selectors: fit on `train`, 1-NN on the top-ranked rows."""
    solution, ranking = fit_baseline(train, method, gamma, max_iters, tol)
    return evaluate_selection(train, test, ranking, fractions), ranking


def run_baseline_transformation(train, test, method, gamma, max_iters=100, tol=1e-6):
    """MTFT/RFT: fit on `train`, 1-NN on the projections U^T x."""
    solution, _ = fit_baseline(train, method, gamma, max_iters, tol)
    return evaluate_features(
        baseline_transform(train, solution), train,
        baseline_transform(test, solution), test
    )
