#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

import time
import unittest
from unittest import mock

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

from lm3fe.common import DivergenceError
from lm3fe.data.models import LM3FEModel
from lm3fe.solver.driver import initialize, evaluate_objective, sweep, fit
from lm3fe.solver.hinge import total_loss
from lm3fe.test.fixtures import random_dataset, random_model, config


class InitializeTest(unittest.TestCase):

    def test_shapes_and_weights(self):
        data = random_dataset(dims=(2, 3, 4), n_tasks=2)
        model = initialize(data, config(latent_dim=3))
        self.assertEqual([u.shape for u in model.extraction], [(2, 3), (3, 3), (4, 3)])
        assert_allclose(model.weights, [1 / 3.0] * 3)
        assert_array_equal(model.prediction, np.zeros((3, 2)))
        assert_array_equal(model.bias, np.zeros(2))

    def test_latent_dim_defaults_to_tasks(self):
        data = random_dataset(n_tasks=3)
        self.assertEqual(initialize(data, config()).latent_dim, 3)

    def test_seeded(self):
        data = random_dataset()
        first = initialize(data, config(rng_seed=4))
        second = initialize(data, config(rng_seed=4))
        other = initialize(data, config(rng_seed=5))
        for a, b, c in zip(first.extraction, second.extraction, other.extraction):
            assert_array_equal(a, b)
            self.assertFalse(np.array_equal(a, c))


class EvaluateObjectiveTest(unittest.TestCase):

    def test_row_norm_regulariser(self):
        data = random_dataset(dims=(2,), n_tasks=2)
        model = LM3FEModel([[[3.0, 4.0], [0.0, 0.0]]], np.zeros((2, 2)), np.zeros(2), [1.0])
        breakdown = evaluate_objective(model, data, config(gamma_b=0.2))
        self.assertAlmostEqual(breakdown.reg_U, 1.0)
        self.assertEqual(breakdown.reg_W, 0.0)
        self.assertAlmostEqual(breakdown.reg_theta, 1.0)

    def test_decomposition(self):
        data = random_dataset(seed=2, dims=(2, 3))
        model = random_model(data, seed=3)
        settings = config()
        breakdown = evaluate_objective(model, data, settings)
        self.assertEqual(breakdown.loss, total_loss(model, data, settings))
        self.assertAlmostEqual(breakdown.reg_W, 0.1 * np.sum(model.prediction ** 2))
        self.assertAlmostEqual(
            breakdown.total,
            breakdown.loss + breakdown.reg_W + breakdown.reg_U + breakdown.reg_theta
        )
        self.assertEqual(set(breakdown.jsondict()),
                         {"loss", "reg_W", "reg_U", "reg_theta", "total"})


class SweepTest(unittest.TestCase):

    def test_does_not_touch_input(self):
        data = random_dataset(seed=4)
        model = random_model(data, seed=4)
        before = model.copy()
        updated, inner = sweep(data, model, config())
        for a, b in zip(model.extraction, before.extraction):
            assert_array_equal(a, b)
        assert_array_equal(model.weights, before.weights)
        self.assertEqual(len(inner["W"]), data.n_tasks)
        self.assertEqual(len(inner["U"]), data.n_modalities)
        self.assertTrue(np.all(updated.weights >= 0))


class FitTest(unittest.TestCase):

    def test_loosest_tolerance_stops_after_two_sweeps(self):
        data = random_dataset(seed=5, dims=(3, 2), n_samples=8)
        model, trace = fit(data, config(epsilon=1.0))
        self.assertTrue(trace.converged)
        self.assertEqual(trace.sweeps, 2)
        self.assertEqual(len(trace.outer_objective), 3)
        self.assertEqual(len(trace.breakdowns), 3)

    def test_deterministic(self):
        data = random_dataset(seed=6, dims=(3, 2), n_samples=8)
        first, first_trace = fit(data, config(max_outer_iters=5))
        second, second_trace = fit(data, config(max_outer_iters=5))
        self.assertEqual(first_trace.outer_objective, second_trace.outer_objective)
        for a, b in zip(first.extraction, second.extraction):
            assert_array_equal(a, b)
        assert_array_equal(first.prediction, second.prediction)
        assert_array_equal(first.weights, second.weights)

    def test_monotone_and_converged_on_random_instances(self):
        rng = np.random.default_rng(11)
        for seed in range(20):
            n_modalities = int(rng.integers(1, 4))
            dims = tuple(int(d) for d in rng.integers(2, 21, size=n_modalities))
            n_samples = int(rng.integers(10, 51))
            n_tasks = int(rng.integers(1, 5))
            data = random_dataset(seed=seed, dims=dims, n_samples=n_samples, n_tasks=n_tasks)
            _, trace = fit(data, config(rng_seed=seed))
            self.assertTrue(trace.is_monotone(), msg='seed {}'.format(seed))
            self.assertTrue(trace.converged, msg='seed {}'.format(seed))
            self.assertLessEqual(trace.sweeps, 50)
            self.assertFalse([v for v in trace.violations if 'rose' in v])

    def test_budget_exhaustion(self):
        data = random_dataset(seed=7)
        _, trace = fit(data, config(epsilon=1e-12, max_outer_iters=1))
        self.assertEqual(trace.sweeps, 1)
        self.assertFalse(trace.converged)

    def test_weight_stop_rule(self):
        data = random_dataset(seed=8)
        _, trace = fit(data, config(stop_rule='theta', epsilon=1.0))
        self.assertTrue(trace.converged)
        self.assertEqual(trace.sweeps, 1)

    def test_divergence_reports_sweep(self):
        data = random_dataset(seed=9)
        failure = DivergenceError('theta', 4, float('nan'))
        with mock.patch('lm3fe.solver.driver.solve_theta', side_effect=failure):
            with self.assertRaises(DivergenceError) as context:
                fit(data, config())
        self.assertEqual(context.exception.sweep, 1)
        self.assertIn('sweep 1', str(context.exception))
        self.assertIn('theta', str(context.exception))


class ScalingTest(unittest.TestCase):

    def timed_fit(self, dim):
        data = random_dataset(seed=12, dims=(dim, dim, dim), n_samples=40, n_tasks=3)
        settings = config(epsilon=1e-12, max_outer_iters=3, max_inner_iters=100)
        best = float('inf')
        for _ in range(2):
            start = time.perf_counter()
            fit(data, settings)
            best = min(best, time.perf_counter() - start)
        return best

    def test_doubling_dimension_stays_near_linear(self):
        timings = [self.timed_fit(dim) for dim in (32, 64, 128)]
        for smaller, larger in zip(timings, timings[1:]):
            # Target ratio is 2.5, loosened for timer noise.
            self.assertLessEqual(larger, 4.0 * smaller + 0.05, msg=str(timings))
