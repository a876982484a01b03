"""Growth of groups and of double cosets from finite presentations."""

__version__ = "0.1.0"

from .words import (Presentation, parse_presentation, format_presentation, parse_word,
                    free_reduce, cyclic_reduce, invert, shortlex_less)
from .small_cancellation import (symmetrize, max_piece, check_metric_condition, dehn_reduce,
                                 FreeOracle, DehnOracle, BallOracle, make_oracle, is_trivial,
                                 geodesic_length)
from .rips import build_rips, beta_image, n_generators
from .stallings import (fold_core, membership, is_finite_index, intersection_pullback,
                        double_coset_equal_free, double_coset_canonical_free)
from .cayley import enumerate_ball
from .growth import (GrowthSeries, growth_function, double_coset_growth_free,
                     double_coset_growth_buffered, theorem1_check, Theorem2Config,
                     theorem2_experiment, fit_rate)
from .geometry import (QuasiParams, gromov_product, is_quasigeodesic, find_separators,
                       select_connector)
