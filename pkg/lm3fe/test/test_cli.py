#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

import io
import json
import os
import tempfile
import unittest
from unittest import mock

import numpy as np
from tornado.options import OptionParser

from lm3fe.common import ConfigError
from lm3fe.cli import RunConfig, split_arguments, EXIT_BUDGET_EXHAUSTED
from lm3fe.data.ingest import load_manifest, read_matrix
from lm3fe.main import main
from lm3fe.persistence.engine import disconnect
from lm3fe.properties import define_options


def fresh_parser():
    parser = OptionParser()
    define_options(parser)
    return parser


class CommandLineTestCase(unittest.TestCase):
    """Runs `main` against a fresh option parser inside a temp dir."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def path(self, *names):
        return os.path.join(self.tmp.name, *names)

    def run_main(self, *arguments):
        stdout, stderr = io.StringIO(), io.StringIO()
        with mock.patch('sys.stdout', stdout), mock.patch('sys.stderr', stderr):
            status = main(['lm3fe'] + list(arguments), parser=fresh_parser())
        # Log records share stderr with the diagnostic line.
        diagnostics = [line for line in stderr.getvalue().splitlines()
                       if line.startswith('lm3fe: ')]
        return status, stdout.getvalue(), '\n'.join(diagnostics)

    def synth(self, name='data', **overrides):
        flags = {
            'dims': '3,3', 'n-samples': 30, 'n-tasks': 3,
            'informative': 3, 'noise': 0.0, 'seed': 1,
        }
        flags.update(overrides)
        status, _, _ = self.run_main('synth', '--out={}'.format(self.path(name)),
            *['--{}={}'.format(key, value) for key, value in sorted(flags.items())])
        self.assertEqual(status, 0)
        return self.path(name, 'manifest.json')

    def read_json(self, *names):
        with open(self.path(*names)) as source:
            return json.load(source)


class SynthAndFitTest(CommandLineTestCase):

    def test_synth_writes_manifest_and_planted(self):
        manifest = self.synth()
        data = load_manifest(manifest)
        self.assertEqual(data.modality_dims, (3, 3))
        self.assertEqual(data.labels.shape, (30, 3))
        self.assertEqual(self.read_json('data', 'planted.json')["planted"], [[0, 1, 2]] * 2)

    def test_fit_outputs_and_determinism(self):
        manifest = self.synth()
        outputs = []
        for name in ('first', 'second'):
            status, _, _ = self.run_main('fit', '--manifest={}'.format(manifest),
                '--out={}'.format(self.path(name)), '--max-outer=3')
            self.assertIn(status, (0, EXIT_BUDGET_EXHAUSTED))
            self.assertTrue(os.path.exists(self.path(name, 'trace.json')))
            outputs.append([])
            for filename in ('model.json', 'trace.json'):
                with open(self.path(name, filename), 'rb') as source:
                    outputs[-1].append(source.read())
        self.assertEqual(outputs[0][0], outputs[1][0])
        self.assertEqual(outputs[0][1], outputs[1][1])

        trace = self.read_json('first', 'trace.json')
        self.assertEqual(trace[0]["sweep"], 0)
        self.assertIn("total", trace[0])
        model = self.read_json('first', 'model.json')
        self.assertEqual(model["latent_dim"], 3)

    def test_budget_exhaustion_status(self):
        manifest = self.synth()
        status, _, _ = self.run_main('fit', '--manifest={}'.format(manifest),
            '--out={}'.format(self.path('fit')), '--max-outer=1', '--epsilon=1e-12')
        self.assertEqual(status, EXIT_BUDGET_EXHAUSTED)


class ModelCommandsTest(CommandLineTestCase):

    def setUp(self):
        super(ModelCommandsTest, self).setUp()
        self.manifest = self.synth()
        status, _, _ = self.run_main('fit', '--manifest={}'.format(self.manifest),
            '--out={}'.format(self.path('fit')), '--max-outer=3')
        self.assertIn(status, (0, EXIT_BUDGET_EXHAUSTED))

    def test_select(self):
        status, _, _ = self.run_main('select', '--manifest', self.manifest,
            '--out={}'.format(self.path('fit')), '--fractions=0.5,1.0')
        self.assertEqual(status, 0)
        with open(self.path('fit', 'ranking.csv')) as source:
            self.assertEqual(len(source.readlines()), 7)
        selected = load_manifest(self.path('fit', 'selected', 'manifest.json'))
        self.assertEqual(selected.modality_dims, (5,))

    def test_transform(self):
        status, _, _ = self.run_main('transform', '--manifest={}'.format(self.manifest),
            '--out={}'.format(self.path('fit')))
        self.assertEqual(status, 0)
        self.assertEqual(read_matrix(self.path('fit', 'transformed.csv')).shape, (30, 3))

    def test_eval_with_saved_model(self):
        status, _, _ = self.run_main('eval', '--mode=transform',
            '--manifest={}'.format(self.manifest),
            '--model={}'.format(self.path('fit', 'model.json')),
            '--out={}'.format(self.path('eval')))
        self.assertEqual(status, 0)
        report = self.read_json('eval', 'report.json')
        self.assertTrue(0.0 <= report["accuracy"] <= 1.0)
        self.assertEqual(report["n_train"] + report["n_test"], 30)


class EvaluationCommandsTest(CommandLineTestCase):

    def test_knn_on_separable_data(self):
        manifest = self.synth()
        status, _, _ = self.run_main('eval', '--mode=knn', '--manifest={}'.format(manifest),
            '--out={}'.format(self.path('eval')))
        self.assertEqual(status, 0)
        self.assertEqual(self.read_json('eval', 'report.json')["accuracy"], 1.0)

    def test_baselines(self):
        manifest = self.synth()
        for method in ('cat', 'bsf', 'mtfs'):
            status, _, _ = self.run_main('baseline', '--method={}'.format(method),
                '--manifest={}'.format(manifest), '--out={}'.format(self.path(method)),
                '--gamma=0.1', '--fractions=1.0')
            self.assertEqual(status, 0)
            self.assertEqual(self.read_json(method, 'report.json')["accuracy"], 1.0)
        self.assertTrue(os.path.exists(self.path('mtfs', 'ranking.csv')))

    def test_unknown_mode(self):
        manifest = self.synth()
        status, _, stderr = self.run_main('eval', '--mode=svm', '--manifest={}'.format(manifest))
        self.assertEqual(status, 1)
        self.assertIn('svm', stderr)


class FailureTest(CommandLineTestCase):

    def test_missing_manifest(self):
        status, _, stderr = self.run_main('fit', '--manifest={}'.format(self.path('none.json')))
        self.assertEqual(status, 1)
        self.assertTrue(stderr.startswith('lm3fe: '))
        self.assertEqual(len(stderr.splitlines()), 1)

    def test_missing_label_file(self):
        manifest = self.synth()
        os.remove(self.path('data', 'labels.csv'))
        status, _, stderr = self.run_main('fit', '--manifest={}'.format(manifest),
            '--out={}'.format(self.path('fit')))
        self.assertEqual(status, 1)
        self.assertIn('labels.csv', stderr)

    def test_no_command(self):
        status, _, stderr = self.run_main('--gamma-a=1')
        self.assertEqual(status, 1)
        self.assertIn('No command', stderr)

    def test_unknown_command(self):
        status, _, stderr = self.run_main('train')
        self.assertEqual(status, 1)
        self.assertIn('train', stderr)

    def test_invalid_solver_option(self):
        manifest = self.synth()
        status, _, _ = self.run_main('fit', '--manifest={}'.format(manifest), '--sigma=0')
        self.assertEqual(status, 1)


class GridAndRunsTest(CommandLineTestCase):

    def test_grid_lines(self):
        status, stdout, _ = self.run_main('grid', '--gamma-a-grid=1,2',
            '--gamma-b-grid=0.5', '--gamma-c-grid=3')
        self.assertEqual(status, 0)
        self.assertEqual(stdout.splitlines(), [
            '--gamma-a=1.0 --gamma-b=0.5 --gamma-c=3.0',
            '--gamma-a=2.0 --gamma-b=0.5 --gamma-c=3.0',
        ])

    def test_default_grid_size(self):
        _, stdout, _ = self.run_main('grid')
        self.assertEqual(len(stdout.splitlines()), 11 ** 3)

    def test_runs_needs_registry(self):
        status, _, stderr = self.run_main('runs')
        self.assertEqual(status, 1)
        self.assertIn('db-uri', stderr)

    def test_registry(self):
        self.addCleanup(disconnect)
        db_uri = '--db-uri=sqlite:///{}'.format(self.path('runs.db'))
        manifest = self.synth()
        self.run_main('fit', '--manifest={}'.format(manifest),
            '--out={}'.format(self.path('fit')), '--max-outer=2', db_uri)
        self.run_main('eval', '--manifest={}'.format(manifest),
            '--out={}'.format(self.path('eval')), db_uri)
        status, stdout, _ = self.run_main('runs', db_uri)
        self.assertEqual(status, 0)
        listing = json.loads(stdout)
        self.assertEqual(len(listing["fit_runs"]), 1)
        self.assertEqual(listing["evaluations"][0]["method"], 'knn')
        self.assertEqual(listing["evaluations"][0]["accuracy"], 1.0)


class RunConfigTest(CommandLineTestCase):

    def write_run_config(self, document):
        path = self.path('run.json')
        with open(path, 'w') as target:
            json.dump(document, target)
        return path

    def test_run_config_drives_fit(self):
        self.synth()
        path = self.write_run_config({
            "mode": "fit",
            "manifest": "data/manifest.json",
            "out": self.path('fit'),
            "solver": {"max_outer_iters": 1, "gamma_a": 0.5},
        })
        status, _, _ = self.run_main('--run-config={}'.format(path))
        self.assertIn(status, (0, EXIT_BUDGET_EXHAUSTED))
        self.assertEqual(len(self.read_json('fit', 'trace.json')), 2)

    def test_flags_override_run_config(self):
        path = self.write_run_config({"mode": "grid", "grids": {"gamma_a": [1.0, 2.0]}})
        _, stdout, _ = self.run_main('--run-config={}'.format(path),
            '--gamma-a-grid=5', '--gamma-b-grid=1', '--gamma-c-grid=1')
        self.assertEqual(stdout.splitlines(), ['--gamma-a=5.0 --gamma-b=1.0 --gamma-c=1.0'])

    def test_unknown_keys(self):
        path = self.write_run_config({"mode": "fit", "learning_rate": 0.1})
        with self.assertRaises(ConfigError):
            RunConfig.load(path)

    def test_unknown_option(self):
        with self.assertRaises(ConfigError):
            RunConfig(mode='fit', options={"colour": "red"}).as_arguments(fresh_parser())

    def test_missing_manifest(self):
        path = self.write_run_config({"mode": "fit", "manifest": "nothing.json"})
        with self.assertRaises(ConfigError):
            RunConfig.load(path)

    def test_as_arguments(self):
        run = RunConfig(mode='fit', solver={"rng_seed": 3}, grids={"gamma_b": [0.1, 1.0]},
                        options={"multi_label": True})
        self.assertEqual(run.as_arguments(fresh_parser()), [
            '--gamma_b_grid=0.1,1.0', '--multi_label=true', '--seed=3',
        ])


class SplitArgumentsTest(unittest.TestCase):

    def test_command_anywhere(self):
        parser = fresh_parser()
        command, flags, positional = split_arguments(
            parser, ['--gamma-a', '0.5', 'fit', '--multi-label', '--out=x', 'extra']
        )
        self.assertEqual(command, 'fit')
        self.assertEqual(flags, ['--gamma-a=0.5', '--multi-label', '--out=x'])
        self.assertEqual(positional, ['extra'])

    def test_no_command(self):
        self.assertEqual(split_arguments(fresh_parser(), ['--seed=1']),
                         (None, ['--seed=1'], []))


class ParsedValuesTest(CommandLineTestCase):

    def test_flags_reach_commands(self):
        manifest = self.synth()
        with mock.patch('lm3fe.cli.commands.fit') as fake_fit:
            fake_fit.side_effect = ConfigError('stop here')
            status, _, stderr = self.run_main('fit', '--manifest={}'.format(manifest),
                '--latent-dim=4', '--gamma-c=2')
        self.assertEqual(status, 1)
        data, config = fake_fit.call_args[0]
        self.assertEqual(config.latent_dim, 4)
        self.assertEqual(config.gamma_c, 2.0)
        self.assertEqual(data.n_samples, 30)
        self.assertIn('stop here', stderr)
        self.assertTrue(np.all(np.isfinite(data.concatenated())))
