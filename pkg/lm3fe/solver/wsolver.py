#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Prediction matrix update: one accelerated gradient run per task on the
latent features, with the bias absorbed as a constant feature.
"""

from dataclasses import dataclass

import numpy as np

from lm3fe.common import LOG, ShapeError, parallel_map
from .base import SolveResult, has_converged, check_finite
from .hinge import SmoothedHingeContext


@dataclass(frozen=True, eq=False)
class WSubproblem:
    """Task sub-problem: Z is (m + 1) x N with a trailing row of ones,
    `y` the sign labels of the task."""

    Z: np.ndarray
    y: np.ndarray
    gamma_a: float
    sigma: float
    x_inf_norms: np.ndarray

    def __post_init__(self):
        if self.Z.shape[1] != self.y.shape[0] or self.y.shape != self.x_inf_norms.shape:
            raise ShapeError('Latent features, labels and norms disagree on N.')

    def _penalised(self, w):
        # The bias coordinate is not regularised.
        masked = np.array(w, dtype=float)
        masked[-1] = 0.0
        return masked

    def context(self, w):
        return SmoothedHingeContext.at(self.y * self.Z.T.dot(w), self.x_inf_norms, self.sigma)

    def objective(self, w):
        penalised = self._penalised(w)
        return self.context(w).loss + self.gamma_a * penalised.dot(penalised)

    def with_labels(self, y):
        return WSubproblem(self.Z, y, self.gamma_a, self.sigma, self.x_inf_norms)


def build_latent(data, model):
    """Weighted latent features sum_v theta_v U_v^T X_v, plus a row of ones."""
    model.check_compatible(data)
    latent = np.zeros((model.latent_dim, data.n_samples))
    for theta, u, x in zip(model.weights, model.extraction, data.modalities):
        latent += theta * u.T.dot(x)
    return np.vstack([latent, np.ones((1, data.n_samples))])


def grad_F_wp(sub, w):
    """-Z Y_p nu_p + 2 gamma_A w, nu evaluated at `w`."""
    nu = sub.context(w).nu
    return -sub.Z.dot(sub.y * nu) + 2.0 * sub.gamma_a * sub._penalised(w)


def lipschitz_F_wp(sub):
    """(N / sigma) max_n ||z_n||^2 / ||x_n||_inf + 2 gamma_A."""
    n_samples = sub.Z.shape[1]
    if n_samples == 0:
        return 2.0 * sub.gamma_a
    ratios = np.sum(sub.Z * sub.Z, axis=0) / sub.x_inf_norms
    return n_samples / sub.sigma * float(np.max(ratios)) + 2.0 * sub.gamma_a


def solve_wp(sub, w_init=None, epsilon=1e-3, max_iters=500):
    """Accelerated gradient run from the zero vector.

    The returned solution is the best point seen among the iterates, the
    gradient-step points and `w_init` (the warm start of the caller)."""
    size = sub.Z.shape[0]
    L = lipschitz_F_wp(sub)
    w = np.zeros(size)
    anchor = np.zeros(size)
    accumulated = np.zeros(size)

    initial = check_finite(sub.objective(w), 'W', 0)
    best, best_value = w, initial
    if w_init is not None:
        warm_value = check_finite(sub.objective(w_init), 'W', 0)
        if warm_value < best_value:
            best, best_value = np.array(w_init, dtype=float), warm_value

    history = [initial]
    previous = initial
    converged = False
    t = 0
    while t < max_iters:
        gradient = grad_F_wp(sub, w)
        y_t = w - gradient / L
        accumulated += 0.5 * (t + 1) * gradient
        z_t = anchor - accumulated / L
        w = 2.0 / (t + 3) * z_t + (t + 1.0) / (t + 3) * y_t
        t += 1

        current = check_finite(sub.objective(w), 'W', t)
        step_value = check_finite(sub.objective(y_t), 'W', t)
        history.append(current)
        if step_value < best_value:
            best, best_value = y_t, step_value
        if current < best_value:
            best, best_value = w, current

        if has_converged(current, previous, initial, epsilon):
            converged = True
            break
        previous = current

    return SolveResult(best, best_value, history, t, converged)


def solve_W(data, model, config):
    """Solve every task independently; return (W, b, results)."""
    Z = build_latent(data, model)
    base = WSubproblem(
        Z, data.labels[:, 0], config.gamma_a, config.sigma, data.sample_inf_norms
    )
    warm = np.vstack([model.prediction, model.bias[None, :]])

    def solve_task(p):
        return solve_wp(
            base.with_labels(data.labels[:, p]),
            warm[:, p],
            config.epsilon,
            config.max_inner_iters
        )

    results = parallel_map(solve_task, range(data.n_tasks), config.threads)
    solution = np.column_stack([result.solution for result in results])
    LOG.debug('W update: iterations per task {}'.format(
        [result.iterations for result in results]
    ))
    return solution[:-1], solution[-1], results
