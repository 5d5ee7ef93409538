#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Comparison methods: MTFS and RFS on concatenated features and the
best-single-modality / concatenation references.
"""

from .rfs import (ConcatProblem, BaselineSolution, solve_rfs, solve_mtfs,
    rfs_objective, mtfs_objective, baseline_transform)
from .reference import (run_reference, fit_baseline, run_baseline_selection,
    run_baseline_transformation)
