#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Define properties as shown in the `--help` page and in the config file.
"""

from tornado.options import options

from lm3fe.common import default_threads


#: Candidate sets for the trade-off parameters, as documented grid defaults.
GAMMA_A_GRID = [10.0 ** i for i in range(-5, 6)]
GAMMA_B_GRID = [10.0 ** i for i in range(-9, 2)]
GAMMA_C_GRID = [10.0 ** i for i in range(-5, 6)]


def define_options(parser):
    """Declare every lm3fe option on `parser` (a tornado OptionParser)."""
    define = parser.define

    define("gamma_a",
        default=0.1, type=float,
        help="Trade-off of the prediction matrix regulariser ||W||_F^2.",
        group="Solver"
    )

    define("gamma_b",
        default=0.01, type=float,
        help="Trade-off of the l2,1 regulariser on the extraction matrices.",
        group="Solver"
    )

    define("gamma_c",
        default=1.0, type=float,
        help="Trade-off of the modality weight smoother ||theta||^2.",
        group="Solver"
    )

    define("sigma",
        default=5.0, type=float,
        help="Smoothing parameter of the hinge loss.",
        group="Solver"
    )

    define("epsilon",
        default=1e-3, type=float,
        help="Relative objective change that stops every solver loop.",
        group="Solver"
    )

    define("latent_dim",
        default=0, type=int,
        help="Latent dimension m. 0 means the number of tasks P.",
        group="Solver"
    )

    define("max_outer",
        default=50, type=int,
        help="Maximum number of alternating sweeps.",
        group="Solver"
    )

    define("max_inner",
        default=500, type=int,
        help="Maximum number of iterations of each sub-solver.",
        group="Solver"
    )

    define("u_sweeps",
        default=1, type=int,
        help="Sweeps over the modalities per extraction update.",
        group="Solver"
    )

    define("stop_rule",
        default="objective",
        help="Outer stopping rule: `objective` or `theta`.",
        group="Solver"
    )

    define("d_floor",
        default=1e-12, type=float,
        help="Lower bound of row norms in the l2,1 reweighting.",
        group="Solver"
    )

    define("seed",
        default=0, type=int,
        help="Random seed for initialisation, splits and synthetic data.",
        group="Solver"
    )

    define("manifest",
        default='', help="JSON dataset manifest.",
        group="Data"
    )

    define("normalization",
        default="unit_range",
        help="Feature normalisation: `unit_range` or `zscore`.",
        group="Data"
    )

    define("encoding",
        default="zero_one",
        help="Label encoding used by the manifest when it gives none.",
        group="Data"
    )

    define("model",
        default='', help="Fitted model file (defaults to OUT/model.json).",
        group="Data"
    )

    define("mode",
        default="knn",
        help="Evaluation mode: `knn`, `select`, `transform` or `map`.",
        group="Evaluation"
    )

    define("method",
        default="rfs",
        help="Baseline: `rfs`, `mtfs`, `bsf` or `cat`.",
        group="Evaluation"
    )

    define("fractions",
        default=[0.3], type=float, multiple=True,
        help="Fraction of features kept per modality (one value for all).",
        group="Evaluation"
    )

    define("test_fraction",
        default=0.3, type=float,
        help="Share of samples held out for testing.",
        group="Evaluation"
    )

    define("gamma",
        default=1.0, type=float,
        help="Trade-off of the MTFS/RFS baselines.",
        group="Evaluation"
    )

    define("n_samples",
        default=200, type=int, help="Synthetic samples.", group="Synthetic"
    )

    define("n_tasks",
        default=5, type=int, help="Synthetic tasks.", group="Synthetic"
    )

    define("dims",
        default=[50, 50, 50], type=int, multiple=True,
        help="Synthetic modality dimensions.", group="Synthetic"
    )

    define("informative",
        default=5, type=int,
        help="Informative rows per synthetic modality.", group="Synthetic"
    )

    define("noise",
        default=0.5, type=float,
        help="Noise level on informative rows.", group="Synthetic"
    )

    define("separation",
        default=2.0, type=float,
        help="Scale of the class means on informative rows.", group="Synthetic"
    )

    define("multi_label",
        default=False, type=bool,
        help="Generate multi-label synthetic data.", group="Synthetic"
    )

    define("out",
        default='out', help="Output directory.", group="Output"
    )

    define("run_config",
        default='', help="RunConfig JSON document.", group="Config"
    )

    define("config",
        default='', help="Configuration file to read", group='Config'
    )

    define("gamma_a_grid",
        default=GAMMA_A_GRID, type=float, multiple=True,
        help="Candidate values of gamma_a for grid loops.", group="Config"
    )

    define("gamma_b_grid",
        default=GAMMA_B_GRID, type=float, multiple=True,
        help="Candidate values of gamma_b for grid loops.", group="Config"
    )

    define("gamma_c_grid",
        default=GAMMA_C_GRID, type=float, multiple=True,
        help="Candidate values of gamma_c for grid loops.", group="Config"
    )

    define("db_uri",
        default='',
        help="Run registry DB URI, e.g. `sqlite:///runs.db`. Empty disables.",
        group="Database"
    )

    define("log_queries",
        default=False, help="Log DB queries.", group='Database'
    )

    define("threads",
        default=default_threads(), type=int,
        help="Worker threads. Defaults to LM3FE_THREADS.",
        group="Runtime"
    )


define_options(options)
