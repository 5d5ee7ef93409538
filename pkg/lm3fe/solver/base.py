#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Pieces shared by the sub-solvers: result record, stopping rule and the
divergence check.
"""

from dataclasses import dataclass, field

import numpy as np

from lm3fe.common import DivergenceError


#: Absolute change below which a relative stopping rule counts as met.
ABSOLUTE_TOLERANCE = 1e-15


@dataclass(eq=False)
class SolveResult:
    """Output of one sub-solver run. `objective` lists the value at every
    accepted iterate, starting from the initial point. `rejected` counts
    accelerated steps replaced by a plain gradient step, `stalled` is set
    when neither step could be accepted."""

    solution: np.ndarray
    value: float
    objective: list = field(default_factory=list)
    iterations: int = 0
    converged: bool = False
    rejected: int = 0
    stalled: bool = False


def has_converged(current, previous, initial, epsilon):
    """|F_{t+1} - F_t| / |F_{t+1} - F_0| < epsilon."""
    step = abs(current - previous)
    if step < ABSOLUTE_TOLERANCE:
        return True
    total = abs(current - initial)
    return total > 0 and step / total < epsilon


def check_finite(value, stage, iteration):
    if not np.isfinite(value):
        raise DivergenceError(stage, iteration, value)
    return value
