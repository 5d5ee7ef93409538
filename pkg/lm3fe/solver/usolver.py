#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Extraction matrix update: a modified accelerated gradient method with a
diagonal reweighting of the l2,1 regulariser, run for one modality at a
time while the others stay fixed.

Rows that collapse to zero are held at zero for the rest of the run and
left out of the spectral norm of D. They correspond to an infinite weight
in the reweighted surrogate; keeping their huge floored weight in the step
size would freeze every other row.
"""

from dataclasses import dataclass

import numpy as np

from lm3fe.common import LOG, ShapeError
from .base import SolveResult, has_converged, check_finite
from .hinge import SmoothedHingeContext


#: Rows below this fraction of the largest row are candidates for zeroing.
PIN_RATIO = 1e-4


@dataclass(frozen=True, eq=False)
class USubproblem:
    """Sub-problem of modality v. `W` is the bias-free m x P prediction
    matrix, `offsets` the P x N contribution of the frozen modalities and
    of the biases, `labels` the N x P sign matrix."""

    X: np.ndarray
    W: np.ndarray
    theta: float
    offsets: np.ndarray
    labels: np.ndarray
    gamma_b: float
    sigma: float
    x_inf_norms: np.ndarray
    d_floor: float = 1e-12

    def __post_init__(self):
        n_samples = self.X.shape[1]
        if (self.offsets.shape != (self.W.shape[1], n_samples)
                or self.labels.shape != (n_samples, self.W.shape[1])):
            raise ShapeError('Offsets, labels and modality disagree on N or P.')

    def context(self, U):
        scores = self.theta * self.W.T.dot(U.T.dot(self.X)) + self.offsets
        return SmoothedHingeContext.at(
            self.labels.T * scores, self.x_inf_norms[None, :], self.sigma
        )

    def loss(self, U):
        return self.context(U).loss

    def objective(self, U):
        """Smoothed loss plus gamma_B ||U||_2,1."""
        return self.loss(U) + self.gamma_b * float(np.sum(row_norms(U)))

    def surrogate(self, U, D):
        """Smoothed loss plus gamma_B tr(U^T D U) with D frozen."""
        return self.loss(U) + self.gamma_b * float(np.sum(D * np.sum(U * U, axis=1)))

    def loss_gradient(self, U):
        nu = self.context(U).nu
        return -self.theta * self.X.dot((self.labels.T * nu).T).dot(self.W.T)

    def loss_lipschitz(self):
        """First term of the Lipschitz constant; it does not depend on U."""
        n_tasks, n_samples = self.offsets.shape
        if n_samples == 0 or n_tasks == 0:
            return 0.0
        sample_ratio = np.max(np.sum(self.X * self.X, axis=0) / self.x_inf_norms)
        task_norm = np.max(np.sum(self.W * self.W, axis=0))
        return (n_tasks * n_samples * self.theta ** 2 / self.sigma
                * float(sample_ratio * task_norm))


def row_norms(U):
    return np.sqrt(np.sum(U * U, axis=1))


def update_D(U, d_floor=1e-12):
    """Diagonal of the reweighting matrix, 1 / (2 max(||u^i||, floor))."""
    return 0.5 / np.maximum(row_norms(U), d_floor)


def grad_F_Uv(sub, U, D=None):
    """Gradient of the D-frozen surrogate; D defaults to update_D(U)."""
    if D is None:
        D = update_D(U, sub.d_floor)
    return sub.loss_gradient(U) + 2.0 * sub.gamma_b * D[:, None] * U


def lipschitz_F_Uv(sub, D):
    return sub.loss_lipschitz() + 2.0 * sub.gamma_b * float(np.max(D, initial=0.0))


def _zero_small_rows(sub, U, value, active):
    """Zero the active rows that are tiny and satisfy the optimality
    condition of a zero row, if that does not raise the objective."""
    norms = row_norms(U)
    largest = np.max(norms[active], initial=0.0)
    small = active & (norms <= PIN_RATIO * largest)
    if not small.any():
        return U, value, active

    gradient_norms = row_norms(sub.loss_gradient(U))
    small &= gradient_norms <= sub.gamma_b
    if not small.any():
        return U, value, active

    candidate = U.copy()
    candidate[small] = 0.0
    candidate_value = sub.objective(candidate)
    if candidate_value <= value:
        return candidate, candidate_value, active & ~small
    return U, value, active


def solve_Uv(sub, U_init, epsilon=1e-3, max_iters=500):
    """Modified accelerated gradient run started (and anchored) at U_init.

    Every accepted iterate does not raise the true objective: when the
    accelerated point would, the gradient step on the surrogate is taken
    instead, and when that fails too the run stops."""
    U = np.array(U_init, dtype=float)
    anchor = U.copy()
    accumulated = np.zeros_like(U)
    active = row_norms(U) > sub.d_floor
    U[~active] = 0.0
    L_loss = sub.loss_lipschitz()

    initial = check_finite(sub.objective(U), 'U', 0)
    history = [initial]
    value = initial
    converged = stalled = False
    rejected = 0
    t = 0
    while t < max_iters and active.any():
        D = update_D(U, sub.d_floor)
        mask = active[:, None]
        gradient = grad_F_Uv(sub, U, D) * mask
        L = L_loss + 2.0 * sub.gamma_b * float(np.max(D[active]))

        step = U - gradient / L
        accumulated += 0.5 * (t + 1) * gradient
        candidate = (2.0 / (t + 3) * (anchor - accumulated / L)
                     + (t + 1.0) / (t + 3) * step) * mask
        t += 1

        candidate_value = check_finite(sub.objective(candidate), 'U', t)
        if candidate_value > value:
            rejected += 1
            candidate = step
            candidate_value = check_finite(sub.objective(step), 'U', t)
            if candidate_value > value:
                stalled = True
                break

        previous = value
        U, value, active = _zero_small_rows(sub, candidate, candidate_value, active)
        history.append(value)
        if has_converged(value, previous, initial, epsilon):
            converged = True
            break

    if stalled:
        LOG.debug('Extraction update stalled after {} iterations.'.format(t))
    return SolveResult(U, value, history, t, converged, rejected, stalled)


def modality_offsets(data, model, v):
    """P x N scores of all modalities but v, biases included."""
    latent = np.zeros((model.latent_dim, data.n_samples))
    for other, (theta, u, x) in enumerate(
            zip(model.weights, model.extraction, data.modalities)):
        if other != v:
            latent += theta * u.T.dot(x)
    return model.prediction.T.dot(latent) + model.bias[:, None]


def solve_all_U(data, model, config):
    """Sweep the modalities in order, each against the freshest others.
    Returns the new extraction matrices and the per-modality results."""
    model.check_compatible(data)
    current = model.copy()
    results = []
    for sweep in range(config.u_sweeps):
        for v, x in enumerate(data.modalities):
            sub = USubproblem(
                X=x,
                W=current.prediction,
                theta=float(current.weights[v]),
                offsets=modality_offsets(data, current, v),
                labels=data.labels,
                gamma_b=config.gamma_b,
                sigma=config.sigma,
                x_inf_norms=data.sample_inf_norms,
                d_floor=config.d_floor
            )
            result = solve_Uv(
                sub, current.extraction[v], config.epsilon, config.max_inner_iters
            )
            current.extraction[v] = result.solution
            results.append(result)
    return current.extraction, results
