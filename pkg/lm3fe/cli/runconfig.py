#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
RunConfig JSON documents and the command line splitting they share with
plain invocations.
"""

import json
import os
from dataclasses import dataclass, field

from lm3fe.common import ConfigError


MODES = ('fit', 'select', 'transform', 'eval', 'synth', 'baseline', 'grid', 'runs')

#: SolverConfig field names that differ from their option names.
SOLVER_OPTION_NAMES = {
    'max_outer_iters': 'max_outer',
    'max_inner_iters': 'max_inner',
    'rng_seed': 'seed',
}


def _format(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (list, tuple)):
        return ','.join(_format(item) for item in value)
    if value is None:
        return '0'
    return str(value)


@dataclass
class RunConfig:
    """A run described as a JSON document:

    >>> {"mode": "fit", "manifest": "data/manifest.json", "out": "runs/a",
    ...  "solver": {"gamma_a": 0.1, "gamma_b": 0.01, "gamma_c": 1},
    ...  "grids": {"gamma_b": [1e-9, 1e-5, 0.1]},
    ...  "options": {"fractions": [0.3, 0.3]}}

    Relative manifest paths are resolved against the document directory.
    """

    mode: str = None
    manifest: str = ''
    out: str = ''
    solver: dict = field(default_factory=dict)
    grids: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mode is not None and self.mode not in MODES:
            raise ConfigError('Unknown run mode {!r}.'.format(self.mode))
        if self.manifest and not os.path.exists(self.manifest):
            raise ConfigError('Manifest {} does not exist.'.format(self.manifest))

    @classmethod
    def load(cls, path):
        with open(path, 'r', encoding='utf-8') as source:
            document = json.load(source)
        if not isinstance(document, dict):
            raise ConfigError('Run config {} must hold a JSON object.'.format(path))
        unknown = set(document) - {'mode', 'manifest', 'out', 'solver', 'grids', 'options'}
        if unknown:
            raise ConfigError('Unknown run config keys: {}.'.format(', '.join(sorted(unknown))))
        manifest = document.get('manifest', '')
        if manifest:
            manifest = os.path.join(os.path.dirname(os.path.abspath(path)), manifest)
        return cls(
            mode=document.get('mode'),
            manifest=manifest,
            out=document.get('out', ''),
            solver=dict(document.get('solver', {})),
            grids=dict(document.get('grids', {})),
            options=dict(document.get('options', {}))
        )

    def as_arguments(self, parser):
        """`--name=value` flags that apply this document to `parser`."""
        values = dict(self.options)
        for name, value in self.solver.items():
            values[SOLVER_OPTION_NAMES.get(name, name)] = value
        for name, value in self.grids.items():
            values['{}_grid'.format(name)] = value
        if self.manifest:
            values['manifest'] = self.manifest
        if self.out:
            values['out'] = self.out

        arguments = []
        for name in sorted(values):
            if name not in parser:
                raise ConfigError('Run config sets unknown option {!r}.'.format(name))
            arguments.append('--{}={}'.format(name, _format(values[name])))
        return arguments


def split_arguments(parser, arguments):
    """Separate the command name from the option flags.

    Flags may come before or after the command and take their value either
    as `--name=value` or as `--name value`. Boolean flags and options
    without a default only accept the `=` form.
    Returns (command, flags, positional) with flags in `--name=value` form.
    """
    command, flags, positional = None, [], []
    i = 0
    while i < len(arguments):
        token = arguments[i]
        if token.startswith('--') and len(token) > 2:
            name, equals, _ = token[2:].partition('=')
            takes_value = (
                not equals and name in parser
                and not isinstance(getattr(parser, name), (bool, type(None)))
            )
            if takes_value and i + 1 < len(arguments) and not arguments[i + 1].startswith('--'):
                token = '{}={}'.format(token, arguments[i + 1])
                i += 1
            flags.append(token)
        elif command is None:
            command = token
        else:
            positional.append(token)
        i += 1
    return command, flags, positional
