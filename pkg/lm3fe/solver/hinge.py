#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Smoothed hinge loss shared by the three sub-solvers.

All functions accept scalars or broadcastable arrays. `margin` is y * h,
`x_inf` the infinity norm of the concatenated sample features.
"""

from dataclasses import dataclass

import numpy as np

from lm3fe.common import ConfigError, ShapeError


def _check_domain(x_inf, sigma):
    if np.any(np.asarray(x_inf) <= 0) or np.any(np.asarray(sigma) <= 0):
        raise ConfigError('x_inf and sigma must be strictly positive.')


def compute_nu(gap, x_inf, sigma):
    """Maximiser of nu * gap - sigma/2 * x_inf * nu^2 over [0, 1],
    where gap = 1 - y * h."""
    _check_domain(x_inf, sigma)
    return np.clip(np.asarray(gap, dtype=float) / (sigma * np.asarray(x_inf)), 0.0, 1.0)


def smoothed_hinge(margin, x_inf, sigma):
    """Piecewise smoothed hinge g(y * h)."""
    _check_domain(x_inf, sigma)
    margin = np.asarray(margin, dtype=float)
    width = sigma * np.asarray(x_inf, dtype=float)
    gap = 1.0 - margin
    value = np.where(
        margin < 1.0 - width,
        gap - 0.5 * width,
        0.5 * gap * gap / width
    )
    value = np.where(margin > 1.0, 0.0, value)
    return value if value.ndim else float(value)


@dataclass(frozen=True, eq=False)
class SmoothedHingeContext:
    """Everything the gradients need at one iterate: the smoothing
    parameter, the infinity norms broadcast against the margins, the dual
    matrix nu (entries in [0, 1]) and the smoothed loss sum."""

    sigma: float
    x_inf_norms: np.ndarray
    nu: np.ndarray
    loss: float

    @classmethod
    def at(cls, margins, x_inf_norms, sigma):
        """Evaluate at `margins` (y * h), recomputing nu from scratch."""
        margins = np.asarray(margins, dtype=float)
        return cls(
            sigma=sigma,
            x_inf_norms=x_inf_norms,
            nu=compute_nu(1.0 - margins, x_inf_norms, sigma),
            loss=float(np.sum(smoothed_hinge(margins, x_inf_norms, sigma)))
        )


def decision_scores(model, data):
    """Linear scores h_p(x_n) as a P x N matrix."""
    model.check_compatible(data)
    latent = sum(
        theta * u.T.dot(x)
        for theta, u, x in zip(model.weights, model.extraction, data.modalities)
    )
    return model.prediction.T.dot(latent) + model.bias[:, None]


def total_loss(model, data, config):
    """Sum over tasks and samples of the smoothed hinge loss."""
    try:
        scores = decision_scores(model, data)
    except ValueError as error:
        if isinstance(error, ShapeError):
            raise
        raise ShapeError(str(error))
    margins = data.labels.T * scores
    return float(np.sum(smoothed_hinge(margins, data.sample_inf_norms[None, :], config.sigma)))
