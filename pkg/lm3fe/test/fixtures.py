#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Small random instances shared by the test modules.
"""

import numpy as np

from lm3fe.data.models import MultiModalDataset, LM3FEModel, SolverConfig


def random_dataset(seed=0, dims=(2, 3), n_samples=6, n_tasks=2, single_label=False):
    """Features uniform in [0, 1] (never an all-zero sample), random signs
    or, with `single_label`, one positive task per sample."""
    rng = np.random.default_rng(seed)
    modalities = [rng.uniform(0.05, 1.0, size=(d, n_samples)) for d in dims]
    if single_label:
        classes = np.arange(n_samples) % n_tasks
        labels = -np.ones((n_samples, n_tasks))
        labels[np.arange(n_samples), classes] = 1.0
    else:
        labels = rng.choice([-1.0, 1.0], size=(n_samples, n_tasks))
    return MultiModalDataset.create(modalities, labels)


def random_model(data, seed=0, latent_dim=None, scale=0.5):
    rng = np.random.default_rng(seed)
    m = latent_dim or data.n_tasks
    return LM3FEModel(
        extraction=[rng.normal(0.0, scale, size=(d, m)) for d in data.modality_dims],
        prediction=rng.normal(0.0, scale, size=(m, data.n_tasks)),
        bias=rng.normal(0.0, scale, size=data.n_tasks),
        weights=rng.uniform(0.2, 1.0, size=data.n_modalities)
    )


def config(**overrides):
    values = dict(gamma_a=0.1, gamma_b=0.01, gamma_c=1.0)
    values.update(overrides)
    return SolverConfig(**values)


def central_difference(function, point, h=1e-6):
    """Numerical gradient of a scalar function of an array."""
    point = np.array(point, dtype=float)
    gradient = np.zeros_like(point)
    for index in np.ndindex(point.shape):
        step = np.zeros_like(point)
        step[index] = h
        gradient[index] = (function(point + step) - function(point - step)) / (2 * h)
    return gradient
