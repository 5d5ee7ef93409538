#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Modality weight update: projected optimal gradient method on the
non-negative orthant.
"""

from dataclasses import dataclass

import numpy as np

from lm3fe.common import ShapeError
from .base import SolveResult, has_converged, check_finite
from .hinge import SmoothedHingeContext


@dataclass(frozen=True, eq=False)
class ThetaSubproblem:
    """`scores` is V x P x N with scores[v, p, n] = w_p^T U_v^T x_n^(v),
    i.e. the columns z_pn stacked per task; `bias` has length P and
    `labels` is N x P."""

    scores: np.ndarray
    bias: np.ndarray
    labels: np.ndarray
    gamma_c: float
    sigma: float
    x_inf_norms: np.ndarray

    def __post_init__(self):
        _, n_tasks, n_samples = self.scores.shape
        if self.labels.shape != (n_samples, n_tasks) or self.bias.shape != (n_tasks,):
            raise ShapeError('Scores, biases and labels disagree on N or P.')

    def context(self, theta):
        h = np.tensordot(theta, self.scores, axes=1) + self.bias[:, None]
        return SmoothedHingeContext.at(
            self.labels.T * h, self.x_inf_norms[None, :], self.sigma
        )

    def objective(self, theta):
        theta = np.asarray(theta, dtype=float)
        return self.context(theta).loss + self.gamma_c * float(theta.dot(theta))


def modality_scores(data, model):
    """Build the V x P x N score tensor of the weight sub-problem."""
    model.check_compatible(data)
    return np.stack([
        model.prediction.T.dot(u.T.dot(x))
        for u, x in zip(model.extraction, data.modalities)
    ])


def project_nonneg(x):
    return np.maximum(np.asarray(x, dtype=float), 0.0)


def grad_F_theta(sub, theta):
    """sum_p -Z_p Y_p nu_p + 2 gamma_C theta."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (sub.scores.shape[0],):
        raise ShapeError('theta must have one entry per modality.')
    weighted = sub.labels.T * sub.context(theta).nu
    return -np.einsum('vpn,pn->v', sub.scores, weighted) + 2.0 * sub.gamma_c * theta


def lipschitz_F_theta(sub):
    """(P N / sigma) max_{p,n} ||z_pn||^2 / ||x_n||_inf + 2 gamma_C."""
    _, n_tasks, n_samples = sub.scores.shape
    if n_tasks == 0 or n_samples == 0:
        return 2.0 * sub.gamma_c
    ratios = np.sum(sub.scores ** 2, axis=0) / sub.x_inf_norms[None, :]
    return n_tasks * n_samples / sub.sigma * float(np.max(ratios)) + 2.0 * sub.gamma_c


def momentum_sequence(rho):
    return (1.0 + np.sqrt(4.0 * rho * rho + 1.0)) / 2.0


def solve_theta(sub, theta_init, epsilon=1e-3, max_iters=500):
    """Projected optimal gradient method started at `theta_init` (>= 0).
    Only the iterates are projected; the momentum point may leave the
    orthant. The best feasible iterate is returned."""
    theta = project_nonneg(theta_init)
    L = lipschitz_F_theta(sub)
    momentum = theta.copy()
    rho = 1.0

    initial = check_finite(sub.objective(theta), 'theta', 0)
    best, best_value = theta, initial
    history = [initial]
    previous = initial
    converged = False
    t = 0
    while t < max_iters:
        following = project_nonneg(momentum - grad_F_theta(sub, theta) / L)
        assert np.all(following >= 0)
        rho_next = momentum_sequence(rho)
        momentum = following + (rho - 1.0) / rho_next * (following - theta)
        theta, rho = following, rho_next
        t += 1

        current = check_finite(sub.objective(theta), 'theta', t)
        history.append(current)
        if current < best_value:
            best, best_value = theta, current
        if has_converged(current, previous, initial, epsilon):
            converged = True
            break
        previous = current

    return SolveResult(best, best_value, history, t, converged)
