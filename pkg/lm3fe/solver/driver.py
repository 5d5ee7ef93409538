#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Alternating driver: initialisation, the W -> {U} -> theta loop, the full
objective and the outer stopping rule.
"""

from dataclasses import dataclass

import numpy as np

from lm3fe.common import LOG, DivergenceError
from lm3fe.data.models import LM3FEModel, TraceRecord
from .base import has_converged, check_finite
from .hinge import total_loss
from .wsolver import solve_W
from .usolver import solve_all_U, row_norms
from .thetasolver import ThetaSubproblem, modality_scores, solve_theta


#: Relative slack tolerated before an outer increase is recorded.
MONOTONE_SLACK = 1e-8


@dataclass(frozen=True)
class ObjectiveBreakdown:
    """Smoothed loss and the three regularisers of a model."""

    loss: float
    reg_W: float
    reg_U: float
    reg_theta: float

    @property
    def total(self):
        return self.loss + self.reg_W + self.reg_U + self.reg_theta

    def jsondict(self):
        return {
            "loss": self.loss,
            "reg_W": self.reg_W,
            "reg_U": self.reg_U,
            "reg_theta": self.reg_theta,
            "total": self.total,
        }


def initialize(data, config):
    """Random extraction matrices, uniform weights, zero W and b."""
    rng = np.random.default_rng(config.rng_seed)
    m = config.latent_dim_for(data)
    extraction = []
    for d in data.modality_dims:
        scale = 1.0 / np.sqrt(d * m)
        extraction.append(rng.uniform(-scale, scale, size=(d, m)))
    return LM3FEModel(
        extraction=extraction,
        prediction=np.zeros((m, data.n_tasks)),
        bias=np.zeros(data.n_tasks),
        weights=np.full(data.n_modalities, 1.0 / data.n_modalities)
    )


def evaluate_objective(model, data, config):
    """Split the objective into smoothed loss and regularisers.
    The biases are not part of ||W||_F^2."""
    return ObjectiveBreakdown(
        loss=total_loss(model, data, config),
        reg_W=config.gamma_a * float(np.sum(model.prediction ** 2)),
        reg_U=config.gamma_b * float(sum(np.sum(row_norms(u)) for u in model.extraction)),
        reg_theta=config.gamma_c * float(model.weights.dot(model.weights))
    )


def sweep(data, model, config):
    """One W -> {U} -> theta pass. Returns the new model and the inner
    objective sequences of every sub-solver run."""
    model = model.copy()

    prediction, bias, w_results = solve_W(data, model, config)
    model.prediction, model.bias = prediction, bias

    model.extraction, u_results = solve_all_U(data, model, config)

    sub = ThetaSubproblem(
        scores=modality_scores(data, model),
        bias=model.bias,
        labels=data.labels,
        gamma_c=config.gamma_c,
        sigma=config.sigma,
        x_inf_norms=data.sample_inf_norms
    )
    theta_result = solve_theta(sub, model.weights, config.epsilon, config.max_inner_iters)
    model.weights = theta_result.solution

    inner = {
        "W": [result.objective for result in w_results],
        "U": [result.objective for result in u_results],
        "theta": theta_result.objective,
        "U_rejected": [result.rejected for result in u_results],
        "U_stalled": [result.stalled for result in u_results],
    }
    return model, inner


def fit(data, config):
    """Alternate the three sub-solvers until the outer rule holds or the
    sweep budget is exhausted. Returns (model, trace)."""
    model = initialize(data, config)
    trace = TraceRecord()

    breakdown = evaluate_objective(model, data, config)
    initial = check_finite(breakdown.total, 'outer', 0)
    trace.outer_objective.append(initial)
    trace.breakdowns.append(breakdown)
    LOG.info('Initial objective {:.10g}'.format(initial))

    previous = initial
    for k in range(1, config.max_outer_iters + 1):
        try:
            updated, inner = sweep(data, model, config)
        except DivergenceError as error:
            error.sweep = k
            raise

        breakdown = evaluate_objective(updated, data, config)
        current = check_finite(breakdown.total, 'outer', k)
        trace.outer_objective.append(current)
        trace.breakdowns.append(breakdown)
        trace.inner.append(inner)
        LOG.info('Sweep {}: objective {:.10g} (loss {:.6g})'.format(
            k, current, breakdown.loss
        ))

        if current > previous + MONOTONE_SLACK * abs(previous):
            message = 'sweep {}: objective rose from {!r} to {!r}'.format(k, previous, current)
            LOG.warning('Monotonicity violated, {}'.format(message))
            trace.violations.append(message)
        for v, stalled in enumerate(inner["U_stalled"]):
            if stalled:
                trace.violations.append(
                    'sweep {}: extraction update {} stalled'.format(k, v)
                )

        if config.stop_rule == 'theta':
            done = np.max(np.abs(updated.weights - model.weights), initial=0.0) < config.epsilon
        else:
            done = has_converged(current, previous, initial, config.epsilon)

        model, previous = updated, current
        if done:
            trace.converged = True
            break
    else:
        LOG.warning('Sweep budget of {} exhausted before convergence.'.format(
            config.max_outer_iters
        ))

    return model, trace
