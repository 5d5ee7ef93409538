#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Synthetic multi-modal benchmarks with planted informative features.
"""

import numpy as np

from lm3fe.common import LOG, ConfigError
from lm3fe.data.ingest import normalize_features
from lm3fe.data.models import MultiModalDataset


def _single_label(rng, n_samples, n_tasks):
    classes = rng.permutation(np.arange(n_samples) % n_tasks)
    positives = np.zeros((n_samples, n_tasks), dtype=bool)
    positives[np.arange(n_samples), classes] = True
    return positives


def _multi_label(rng, n_samples, n_tasks, rate=0.3):
    positives = rng.random((n_samples, n_tasks)) < rate
    empty = ~positives.any(axis=1)
    positives[empty, rng.integers(n_tasks, size=empty.sum())] = True
    return positives


def generate_synthetic(dims, n_samples, n_tasks, n_informative, noise_level=0.5,
                       seed=0, separation=2.0, multi_label=False, scheme='zscore'):
    """Build a dataset whose informative rows carry class dependent means
    while every other row is standard Gaussian noise.

    Returns (dataset, planted) where planted[v] holds the sorted indices of
    the informative rows of modality v. Multi-label samples add up the
    means of all their labels. z-score normalisation is the default since
    it cannot turn a noise-free sample into an all-zero column."""
    dims = [int(d) for d in dims]
    if not dims or n_tasks < 1 or n_samples < 1:
        raise ConfigError('Need at least one modality, task and sample.')
    if any(n_informative > d or d < 1 for d in dims) or n_informative < 0:
        raise ConfigError('Cannot plant {} informative rows in dims {}.'.format(
            n_informative, dims
        ))
    if not multi_label and n_samples < n_tasks:
        raise ConfigError('Every class needs at least one sample.')
    if noise_level < 0:
        raise ConfigError('noise_level must be non-negative.')

    rng = np.random.default_rng(seed)
    positives = (_multi_label if multi_label else _single_label)(rng, n_samples, n_tasks)

    raw, planted = [], []
    for d in dims:
        informative = np.sort(rng.choice(d, size=n_informative, replace=False))
        means = rng.normal(0.0, separation, size=(n_informative, n_tasks))
        features = rng.normal(0.0, 1.0, size=(d, n_samples))
        features[informative] = (
            means.dot(positives.T.astype(float))
            + noise_level * rng.normal(0.0, 1.0, size=(n_informative, n_samples))
        )
        raw.append(features)
        planted.append(informative)

    labels = np.where(positives, 1.0, -1.0)
    data = MultiModalDataset.create(normalize_features(raw, scheme), labels)
    LOG.info('Generated synthetic {}'.format(data))
    return data, planted
