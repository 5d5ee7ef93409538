#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Solvers of the large margin multi-modal multi-task objective: the smoothed
hinge loss, the three sub-problem solvers and the alternating driver.
"""

from .hinge import (SmoothedHingeContext, compute_nu, smoothed_hinge,
    total_loss, decision_scores)
from .driver import ObjectiveBreakdown, initialize, evaluate_objective, fit
