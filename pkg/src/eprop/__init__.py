"""Exact iteration of Markov kernels, Fortet-Mourier distances and e-property probes."""

from .fm import FmResult, fm_distance, fm_norm, fm_norm_oracle, fm_solve
from .kernel import (
    SupportBudgetExceeded,
    TransitionKernel,
    apply_P,
    apply_U,
    dual_power,
    iterate_P,
    iterate_U,
)
from .measure import DiscreteMeasure, ScalarField, combine, delta, pair, pair_exact, tv_norm
from .space import (
    CIRCLE_SPACE,
    INTERVAL_UNION_SPACE,
    REAL_LINE_SPACE,
    MetricSpace,
    SpaceMismatch,
    binary_digit,
    circle_distance,
    finite_space,
    prefix_stats,
)

__version__ = "0.1.0"
