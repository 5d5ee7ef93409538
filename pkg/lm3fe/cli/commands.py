#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Command handlers. Every handler takes the parsed options and returns the
process exit status.
"""

import itertools
import json
import os
import sys

from lm3fe.common import LOG, ConfigError
from lm3fe.data.ingest import (load_manifest, load_model, save_model,
    write_dataset, write_json, write_matrix)
from lm3fe.data.models import SolverConfig
from lm3fe.solver.driver import fit
from lm3fe.extraction.ranking import (rank_features, selected_matrix,
    transform_features, write_ranking_csv)
from lm3fe.extraction.evaluation import (split_dataset, evaluate_concatenation,
    evaluate_features, evaluate_selection, evaluate_transformation,
    evaluate_ranking_map)
from lm3fe.extraction.synthetic import generate_synthetic
from lm3fe.baselines.rfs import baseline_transform
from lm3fe.baselines.reference import run_reference, fit_baseline
from lm3fe.persistence.engine import session_scope
from lm3fe.persistence.query import (log_fit_run, log_evaluation,
    get_latest_fit_runs, get_latest_evaluations)


#: Exit status of a fit that ran out of sweeps.
EXIT_BUDGET_EXHAUSTED = 2

EVAL_MODES = ('knn', 'select', 'transform', 'map')
BASELINE_METHODS = ('rfs', 'mtfs', 'bsf', 'cat')


## Helpers ##

def _output(opts, name):
    os.makedirs(opts.out, exist_ok=True)
    return os.path.join(opts.out, name)


def _load_data(opts):
    if not opts.manifest:
        raise ConfigError('--manifest is required.')
    return load_manifest(opts.manifest, encoding=opts.encoding, scheme=opts.normalization)


def _scheme(opts):
    """Normalisation the manifest asks for, else the --normalization flag."""
    with open(opts.manifest, 'r', encoding='utf-8') as source:
        return json.load(source).get('normalization', opts.normalization)


def _model_path(opts):
    return opts.model or os.path.join(opts.out, 'model.json')


def _load_model(opts, data):
    model = load_model(_model_path(opts))
    model.check_compatible(data)
    return model


def _record(opts, log, *args):
    """Write a registry row when a registry is configured."""
    if not opts.db_uri:
        return
    with session_scope() as session:
        log(session, *args)


def _write_report(opts, method, report):
    write_json(_output(opts, 'report.json'), report.jsondict())
    _record(opts, log_evaluation, method, opts.manifest, report)
    LOG.info('{} report: {}'.format(method, report.jsondict()))


## Commands ##

def cmd_fit(opts):
    """Fit a model, write model.json and trace.json."""
    data = _load_data(opts)
    config = SolverConfig.from_options(opts)
    model, trace = fit(data, config)

    save_model(_output(opts, 'model.json'), model)
    write_json(_output(opts, 'trace.json'), trace.jsondict())
    if trace.violations:
        write_json(_output(opts, 'violations.json'), trace.violations)
    _record(opts, log_fit_run, opts.manifest, config, model, trace)

    if not trace.converged:
        return EXIT_BUDGET_EXHAUSTED
    return 0


def cmd_select(opts):
    """Write the feature ranking and the reduced dataset."""
    data = _load_data(opts)
    ranking = rank_features(_load_model(opts, data))
    write_ranking_csv(_output(opts, 'ranking.csv'), ranking)
    write_dataset(
        os.path.join(opts.out, 'selected'),
        [selected_matrix(data, ranking, opts.fractions)],
        data.labels,
        prefix='selected',
        scheme=_scheme(opts)
    )
    return 0


def cmd_transform(opts):
    """Write the N x m projected features."""
    data = _load_data(opts)
    write_matrix(_output(opts, 'transformed.csv'), transform_features(data, _load_model(opts, data)))
    return 0


def _model_for(opts, train):
    """The model given with --model, or one fitted on the training split."""
    if opts.model:
        return _load_model(opts, train)
    model, trace = fit(train, SolverConfig.from_options(opts))
    if not trace.converged:
        LOG.warning('Evaluation model did not converge.')
    return model


def cmd_eval(opts):
    """Evaluate a protocol on a seeded train/test split."""
    if opts.mode not in EVAL_MODES:
        raise ConfigError('Unknown evaluation mode {!r}.'.format(opts.mode))
    data = _load_data(opts)
    train, test = split_dataset(data, opts.test_fraction, opts.seed)

    if opts.mode == 'knn':
        report = evaluate_concatenation(train, test)
    else:
        model = _model_for(opts, train)
        if opts.mode == 'select':
            report = evaluate_selection(train, test, rank_features(model), opts.fractions)
        elif opts.mode == 'transform':
            report = evaluate_transformation(train, test, model)
        else:
            report = evaluate_ranking_map(test, model)
            report.n_train = train.n_samples

    _write_report(opts, opts.mode, report)
    return 0


def cmd_synth(opts):
    """Write a synthetic dataset with manifest and planted supports."""
    data, planted = generate_synthetic(
        opts.dims, opts.n_samples, opts.n_tasks, opts.informative,
        noise_level=opts.noise,
        seed=opts.seed,
        separation=opts.separation,
        multi_label=opts.multi_label
    )
    path = write_dataset(opts.out, data.modalities, data.labels, scheme='zscore')
    write_json(_output(opts, 'planted.json'), {
        "planted": [indices.tolist() for indices in planted]
    })
    LOG.info('Synthetic manifest written to {}'.format(path))
    return 0


def cmd_baseline(opts):
    """Run a comparison method; MTFS/RFS also write their ranking."""
    method = opts.method.lower()
    if method not in BASELINE_METHODS:
        raise ConfigError('Unknown baseline method {!r}.'.format(opts.method))
    data = _load_data(opts)
    train, test = split_dataset(data, opts.test_fraction, opts.seed)

    if method in ('bsf', 'cat'):
        report = run_reference(train, method, test=test)
    else:
        solution, ranking = fit_baseline(
            train, method, opts.gamma, max_iters=opts.max_outer, tol=opts.epsilon
        )
        write_ranking_csv(_output(opts, 'ranking.csv'), ranking)
        if opts.mode == 'transform':
            report = evaluate_features(
                baseline_transform(train, solution), train,
                baseline_transform(test, solution), test
            )
        else:
            report = evaluate_selection(train, test, ranking, opts.fractions)

    _write_report(opts, method, report)
    return 0


def cmd_grid(opts):
    """Print one flag line per point of the trade-off grids."""
    grid = itertools.product(opts.gamma_a_grid, opts.gamma_b_grid, opts.gamma_c_grid)
    for gamma_a, gamma_b, gamma_c in grid:
        sys.stdout.write('--gamma-a={!r} --gamma-b={!r} --gamma-c={!r}\n'.format(
            gamma_a, gamma_b, gamma_c
        ))
    return 0


def cmd_runs(opts):
    """Print the latest registry rows as JSON."""
    if not opts.db_uri:
        raise ConfigError('--db-uri is required to list runs.')
    with session_scope() as session:
        listing = {
            "fit_runs": [run.jsondict() for run in get_latest_fit_runs(session, limit=20)],
            "evaluations": [item.jsondict() for item in get_latest_evaluations(session, limit=20)],
        }
    sys.stdout.write(json.dumps(listing, indent=1, sort_keys=True))
    sys.stdout.write('\n')
    return 0


COMMANDS = {
    'fit': cmd_fit,
    'select': cmd_select,
    'transform': cmd_transform,
    'eval': cmd_eval,
    'synth': cmd_synth,
    'baseline': cmd_baseline,
    'grid': cmd_grid,
    'runs': cmd_runs,
}


def run_command(command, opts):
    """Dispatch `command` to its handler and return the exit status."""
    try:
        handler = COMMANDS[command]
    except KeyError:
        raise ConfigError('Unknown command {!r}, expected one of {}.'.format(
            command, ', '.join(sorted(COMMANDS))
        ))
    LOG.debug('Running command {}'.format(command))
    return handler(opts)
