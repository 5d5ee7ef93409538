#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""Common elements needed by all modules."""

from concurrent.futures import ThreadPoolExecutor

import logging
import os


#: Main logger
LOG = logging.getLogger('lm3fe')


## Exceptions ##

class LM3FEError(Exception):
    """Base class for every error raised by lm3fe."""


class ShapeError(LM3FEError, ValueError):
    """Matrices with incompatible shapes were combined."""


class LabelEncodingError(LM3FEError, ValueError):
    """A label entry is outside the declared encoding."""


class DegenerateSampleError(LM3FEError, ValueError):
    """A sample has all-zero concatenated features."""


class ConfigError(LM3FEError, ValueError):
    """Invalid solver or run configuration."""


class EmptySelectionError(LM3FEError, ValueError):
    """A feature selection would keep nothing."""


class DivergenceError(LM3FEError, ArithmeticError):
    """A sub-solver produced a non-finite objective.

    `stage` names the sub-problem (`W`, `U`, `theta`), `sweep` is filled in
    by the driver when the error crosses the alternating loop."""

    def __init__(self, stage, iteration, value, sweep=None):
        self.stage = stage
        self.iteration = iteration
        self.value = value
        self.sweep = sweep
        super(DivergenceError, self).__init__(str(self))

    def __str__(self):
        where = 'stage {}, iteration {}'.format(self.stage, self.iteration)
        if self.sweep is not None:
            where = 'sweep {}, {}'.format(self.sweep, where)
        return 'Non-finite objective {!r} at {}'.format(self.value, where)


## Helpers ##

def default_threads():
    """Worker count from `LM3FE_THREADS`, 1 when unset or invalid."""
    try:
        return max(1, int(os.environ.get('LM3FE_THREADS', '1')))
    except ValueError:
        LOG.warning('Ignoring invalid LM3FE_THREADS value.')
        return 1


def parallel_map(function, items, threads=1):
    """Apply `function` to every item, on at most `threads` workers.
    Results keep the order of `items`."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(function, items))
