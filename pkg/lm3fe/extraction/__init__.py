#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Feature selection and transformation with a fitted model, downstream
evaluation and synthetic benchmarks.
"""

from .ranking import (FeatureRanking, rank_features, select_features,
    transform_features, selection_precision, write_ranking_csv)
from .evaluation import (EvalReport, knn_classify, compute_metrics,
    split_dataset, labeled_subset, evaluate_concatenation, evaluate_modality,
    evaluate_features, evaluate_selection,
    evaluate_transformation, evaluate_ranking_map, repeat_evaluation)
from .synthetic import generate_synthetic
