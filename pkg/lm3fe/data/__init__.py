#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Multi-modal datasets, fitted models and solver settings shared by all
solvers, plus their file formats.
"""

from .models import MultiModalDataset, LM3FEModel, SolverConfig, TraceRecord
from .ingest import (normalize_features, encode_labels, load_dataset,
    load_manifest, write_dataset, save_model, load_model)
