#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Models for datasets, fitted extractors and solver settings.
"""

from dataclasses import dataclass, field

import numpy as np

from lm3fe.common import (ShapeError, LabelEncodingError,
    DegenerateSampleError, ConfigError)


def _frozen(matrix):
    array = np.array(matrix, dtype=float)
    array.setflags(write=False)
    return array


def _matrix_jsondict(matrix):
    """Flat row-major payload with a shape header."""
    matrix = np.asarray(matrix, dtype=float)
    return {"shape": list(matrix.shape), "data": matrix.ravel().tolist()}


def _matrix_from_jsondict(data):
    return np.array(data["data"], dtype=float).reshape(data["shape"])


@dataclass(frozen=True, eq=False)
class MultiModalDataset:
    """Per-modality feature matrices (features on rows, samples on columns)
    together with the sign label matrix.

    Build it with :meth:`create`, which validates the invariants and
    computes the per-sample infinity norms."""

    modalities: tuple
    labels: np.ndarray
    sample_inf_norms: np.ndarray
    modality_dims: tuple

    @classmethod
    def create(cls, modalities, labels):
        """Validate and freeze. `labels` must already be in {+1, -1}."""
        modalities = tuple(_frozen(np.atleast_2d(x)) for x in modalities)
        labels = _frozen(np.atleast_2d(labels))
        if not modalities:
            raise ShapeError('A dataset needs at least one modality.')

        n_samples = modalities[0].shape[1]
        for v, matrix in enumerate(modalities):
            if matrix.ndim != 2 or matrix.shape[1] != n_samples:
                raise ShapeError(
                    'Modality {} has shape {}, expected {} columns.'.format(
                        v, matrix.shape, n_samples
                ))
        if labels.shape[0] != n_samples:
            raise ShapeError('Labels have {} rows, expected {}.'.format(
                labels.shape[0], n_samples
            ))
        if not np.all(np.abs(labels) == 1.0):
            raise LabelEncodingError('Labels must be exactly +1 or -1.')

        inf_norms = np.max(
            np.abs(np.vstack(modalities)), axis=0
        ) if n_samples else np.zeros(0)
        degenerate = np.flatnonzero(inf_norms <= 0)
        if degenerate.size:
            raise DegenerateSampleError(
                'Samples {} have all-zero features.'.format(
                    degenerate.tolist()
            ))

        return cls(
            modalities=modalities,
            labels=labels,
            sample_inf_norms=_frozen(inf_norms),
            modality_dims=tuple(x.shape[0] for x in modalities)
        )

    @property
    def n_samples(self):
        return self.labels.shape[0]

    @property
    def n_tasks(self):
        return self.labels.shape[1]

    @property
    def n_modalities(self):
        return len(self.modalities)

    def concatenated(self):
        """The (sum d_v) x N matrix of stacked modalities."""
        return np.vstack(self.modalities)

    def subset(self, indices):
        """Dataset restricted to the samples at `indices`."""
        indices = np.asarray(indices, dtype=int)
        return MultiModalDataset.create(
            [x[:, indices] for x in self.modalities],
            self.labels[indices]
        )

    def class_indices(self):
        """Single-label view: index of the positive task of each sample."""
        positives = self.labels > 0
        if not np.all(positives.sum(axis=1) == 1):
            raise LabelEncodingError(
                'Single-label protocol needs exactly one positive label per sample.'
            )
        return np.argmax(positives, axis=1)

    def __str__(self):
        return 'Dataset N={0.n_samples} P={0.n_tasks} dims={0.modality_dims}'.format(self)


@dataclass(eq=False)
class LM3FEModel:
    """Extraction matrices U^(v) (d_v x m), prediction matrix W (m x P)
    with biases b (P), and non-negative modality weights theta (V)."""

    extraction: list
    prediction: np.ndarray
    bias: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.extraction = [np.asarray(u, dtype=float) for u in self.extraction]
        self.prediction = np.atleast_2d(np.asarray(self.prediction, dtype=float))
        self.bias = np.asarray(self.bias, dtype=float).ravel()
        self.weights = np.asarray(self.weights, dtype=float).ravel()

        m = self.latent_dim
        if any(u.ndim != 2 or u.shape[1] != m for u in self.extraction):
            raise ShapeError('Extraction matrices must all have {} columns.'.format(m))
        if self.bias.shape[0] != self.prediction.shape[1]:
            raise ShapeError('One bias per task is required.')
        if self.weights.shape[0] != len(self.extraction):
            raise ShapeError('One weight per modality is required.')
        if np.any(self.weights < 0):
            raise ValueError('Modality weights must be non-negative.')

    @property
    def latent_dim(self):
        return self.prediction.shape[0]

    @property
    def n_tasks(self):
        return self.prediction.shape[1]

    def check_compatible(self, data):
        """Raise ShapeError unless the model fits `data`."""
        dims = tuple(u.shape[0] for u in self.extraction)
        if dims != data.modality_dims:
            raise ShapeError('Model dims {} do not match data dims {}.'.format(
                dims, data.modality_dims
            ))

    def copy(self):
        return LM3FEModel(
            extraction=[u.copy() for u in self.extraction],
            prediction=self.prediction.copy(),
            bias=self.bias.copy(),
            weights=self.weights.copy()
        )

    def jsondict(self):
        """Return a JSON-serializable dictionary representing the model"""
        return {
            "latent_dim": self.latent_dim,
            "theta": self.weights.tolist(),
            "bias": self.bias.tolist(),
            "prediction": _matrix_jsondict(self.prediction),
            "extraction": [_matrix_jsondict(u) for u in self.extraction],
        }

    @classmethod
    def from_jsondict(cls, data):
        return cls(
            extraction=[_matrix_from_jsondict(u) for u in data["extraction"]],
            prediction=_matrix_from_jsondict(data["prediction"]),
            bias=data["bias"],
            weights=data["theta"]
        )


STOP_RULES = ('objective', 'theta')


@dataclass(frozen=True)
class SolverConfig:
    """Trade-offs, smoothing and iteration budgets of a fit."""

    gamma_a: float
    gamma_b: float
    gamma_c: float
    sigma: float = 5.0
    epsilon: float = 1e-3
    latent_dim: int = None
    max_outer_iters: int = 50
    max_inner_iters: int = 500
    u_sweeps: int = 1
    d_floor: float = 1e-12
    rng_seed: int = 0
    threads: int = 1
    stop_rule: str = 'objective'

    def __post_init__(self):
        for name in ('gamma_a', 'gamma_b', 'gamma_c', 'sigma', 'd_floor'):
            if not getattr(self, name) > 0:
                raise ConfigError('{} must be strictly positive.'.format(name))
        if not 0 < self.epsilon <= 1:
            raise ConfigError('epsilon must lie in (0, 1].')
        if self.latent_dim is not None and self.latent_dim < 1:
            raise ConfigError('latent_dim must be a positive integer.')
        for name in ('max_outer_iters', 'max_inner_iters', 'u_sweeps', 'threads'):
            if getattr(self, name) < 1:
                raise ConfigError('{} must be at least 1.'.format(name))
        if self.stop_rule not in STOP_RULES:
            raise ConfigError('Unknown stop rule {!r}.'.format(self.stop_rule))

    def latent_dim_for(self, data):
        return self.latent_dim or data.n_tasks

    @classmethod
    def from_options(cls, opts):
        """Build a config from parsed tornado options."""
        return cls(
            gamma_a=opts.gamma_a,
            gamma_b=opts.gamma_b,
            gamma_c=opts.gamma_c,
            sigma=opts.sigma,
            epsilon=opts.epsilon,
            latent_dim=opts.latent_dim or None,
            max_outer_iters=opts.max_outer,
            max_inner_iters=opts.max_inner,
            u_sweeps=opts.u_sweeps,
            d_floor=opts.d_floor,
            rng_seed=opts.seed,
            threads=opts.threads,
            stop_rule=opts.stop_rule
        )

    def jsondict(self):
        return {
            "gamma_a": self.gamma_a,
            "gamma_b": self.gamma_b,
            "gamma_c": self.gamma_c,
            "sigma": self.sigma,
            "epsilon": self.epsilon,
            "latent_dim": self.latent_dim,
            "max_outer_iters": self.max_outer_iters,
            "max_inner_iters": self.max_inner_iters,
            "u_sweeps": self.u_sweeps,
            "d_floor": self.d_floor,
            "rng_seed": self.rng_seed,
            "stop_rule": self.stop_rule,
        }


@dataclass
class TraceRecord:
    """Objective values recorded by the alternating driver.

    `outer_objective[0]` is the objective at initialisation, entry k the
    value after sweep k. `inner` holds, per sweep, the objective sequences
    of every sub-solver run."""

    outer_objective: list = field(default_factory=list)
    breakdowns: list = field(default_factory=list)
    inner: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    converged: bool = False

    @property
    def sweeps(self):
        return max(0, len(self.outer_objective) - 1)

    def is_monotone(self, slack=1e-8):
        values = self.outer_objective
        return all(
            later <= earlier + slack * abs(earlier)
            for earlier, later in zip(values, values[1:])
        )

    def jsondict(self):
        """JSON array of objective breakdowns, one per trace point."""
        records = []
        for k, breakdown in enumerate(self.breakdowns):
            record = breakdown.jsondict()
            record["sweep"] = k
            if k > 0:
                record["inner"] = self.inner[k - 1]
            records.append(record)
        return records
