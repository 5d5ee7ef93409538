#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Single-matrix multi-task selectors on concatenated features, solved by
iteratively reweighted linear systems:

* RFS:  sum_n ||(X^T U - Y)_n||_2 + gamma ||U||_2,1
* MTFS: (1/N) ||X^T U - Y||_F^2 + gamma ||U||_2,1
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from lm3fe.common import LOG, ConfigError, ShapeError
from lm3fe.extraction.ranking import ranking_from_matrix

#: Floor of the row norms inside the reweighting matrices.
NORM_FLOOR = 1e-12

#: Ridge added to a singular system before solving it again.
RIDGE_BUMP = 1e-10


@dataclass(frozen=True, eq=False)
class ConcatProblem:
    """X is d x N, Y is N x P. The last `n_unpenalised` rows of X (the
    constant bias feature) are left out of the regulariser; `dims` gives
    the modality split of the penalised rows."""

    X: np.ndarray
    Y: np.ndarray
    gamma: float
    dims: tuple = ()
    n_unpenalised: int = 0

    def __post_init__(self):
        if self.X.ndim != 2 or self.Y.ndim != 2 or self.X.shape[1] != self.Y.shape[0]:
            raise ShapeError('X must be d x N and Y N x P.')
        if not self.gamma > 0:
            raise ConfigError('gamma must be positive.')
        if self.dims and sum(self.dims) + self.n_unpenalised != self.X.shape[0]:
            raise ShapeError('Modality dimensions do not add up to the rows of X.')

    @classmethod
    def from_dataset(cls, data, gamma, bias=True):
        X = data.concatenated()
        if bias:
            X = np.vstack([X, np.ones((1, data.n_samples))])
        return cls(X, np.array(data.labels, dtype=float), float(gamma),
                   tuple(data.modality_dims), 1 if bias else 0)

    @property
    def n_features(self):
        return self.X.shape[0] - self.n_unpenalised

    def with_gamma(self, gamma):
        return ConcatProblem(self.X, self.Y, float(gamma), self.dims, self.n_unpenalised)

    def residual(self, U):
        return self.X.T.dot(U) - self.Y

    def penalty(self, U):
        return float(np.sum(_row_norms(U[:self.n_features])))


@dataclass(eq=False)
class BaselineSolution:
    U: np.ndarray
    objective: list = field(default_factory=list)
    iterations: int = 0
    converged: bool = False
    ridge_bumps: int = 0
    n_features: int = 0

    def ranking(self, dims):
        return ranking_from_matrix(self.U[:self.n_features], dims)


def _row_norms(matrix):
    return np.sqrt(np.sum(matrix * matrix, axis=1))


def _reweighting(matrix):
    return 1.0 / (2.0 * np.maximum(_row_norms(matrix), NORM_FLOOR))


def rfs_objective(problem, U):
    return float(np.sum(_row_norms(problem.residual(U)))) + problem.gamma * problem.penalty(U)


def mtfs_objective(problem, U):
    n_samples = problem.X.shape[1]
    residual = problem.residual(U)
    return float(np.sum(residual * residual)) / n_samples + problem.gamma * problem.penalty(U)


def _solve(A, B):
    """Solve A U = B, adding a small ridge when A is singular. Returns the
    solution and the number of ridge bumps."""
    bumps = 0
    while True:
        try:
            return linalg.solve(A, B, assume_a='sym'), bumps
        except linalg.LinAlgError:
            bumps += 1
            if bumps > 10:
                raise
            LOG.debug('Singular baseline system, adding a ridge of {:g}'.format(
                RIDGE_BUMP * bumps
            ))
            A = A + RIDGE_BUMP * np.eye(A.shape[0])


def _regulariser_weights(problem, U):
    weights = np.zeros(problem.X.shape[0])
    weights[:problem.n_features] = _reweighting(U[:problem.n_features])
    return weights


def _initial(problem):
    X = problem.X
    A = X.dot(X.T) + problem.gamma * np.eye(X.shape[0])
    return _solve(A, X.dot(problem.Y))


def _reweighted(problem, objective, system, max_iters, tol):
    U, bumps = _initial(problem)
    value = objective(problem, U)
    history = [value]
    converged = False
    t = 0
    while t < max_iters:
        A, B = system(U)
        candidate, extra = _solve(A, B)
        bumps += extra
        t += 1
        current = objective(problem, candidate)
        if not np.isfinite(current):
            break
        if current > value:
            # Floored weights can break the majorisation; keep the last iterate.
            LOG.debug('Baseline objective rose at iteration {}, stopping.'.format(t))
            converged = True
            break
        U, previous, value = candidate, value, current
        history.append(value)
        if abs(previous - value) <= tol * max(abs(previous), 1e-15):
            converged = True
            break

    LOG.debug('Baseline finished after {} iterations, objective {:.10g}'.format(t, value))
    return BaselineSolution(U, history, t, converged, bumps, problem.n_features)


def solve_rfs(problem, max_iters=100, tol=1e-6):
    """Robust feature selection: l2,1 loss and l2,1 regulariser. Each
    iteration solves (X D1 X^T + gamma D2) U = X D1 Y."""
    X, Y = problem.X, problem.Y

    def system(U):
        d1 = _reweighting(problem.residual(U))
        d2 = _regulariser_weights(problem, U)
        weighted = X * d1[None, :]
        return weighted.dot(X.T) + problem.gamma * np.diag(d2), weighted.dot(Y)

    return _reweighted(problem, rfs_objective, system, max_iters, tol)


def solve_mtfs(problem, gamma=None, max_iters=100, tol=1e-6):
    """Least-squares multi-task selection. Each iteration solves
    (X X^T / N + gamma D2) U = X Y / N. `gamma` overrides the problem's."""
    if gamma is not None:
        problem = problem.with_gamma(gamma)
    X, Y = problem.X, problem.Y
    n_samples = X.shape[1]
    gram = X.dot(X.T) / n_samples
    target = X.dot(Y) / n_samples

    def system(U):
        return gram + problem.gamma * np.diag(_regulariser_weights(problem, U)), target

    return _reweighted(problem, mtfs_objective, system, max_iters, tol)


def baseline_transform(data, solution):
    """N x P projection U^T x of the concatenated features (the bias row
    of U is dropped)."""
    X = data.concatenated()
    if X.shape[0] != solution.n_features:
        raise ShapeError('Solution was fitted on {} features, data has {}.'.format(
            solution.n_features, X.shape[0]
        ))
    return solution.U[:solution.n_features].T.dot(X).T
