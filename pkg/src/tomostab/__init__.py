"""Stability of binary images that are uniquely determined by two projections."""

from .bounds import (
    BoundReport,
    alpers_comparison_bound,
    disjoint_log_bound,
    f1_lower_bound,
    general_harmonic_bound,
    general_log_bound,
    harmonic_bound,
    report,
    sqrt_bound,
    symmetric_bounds,
    u_squared_bound,
)
from .core import (
    InstancePair,
    Metrics,
    Point,
    Projections,
    canonicalize,
    is_uniquely_determined,
    metrics,
    point_set,
    projections,
    ryser_reconstruct,
    triangular_realization,
)
from .families import gen_example1, gen_example2, gen_example3
from .staircase import Decomposition, Label, Staircase, decompose, equalize, rebalance, tau

__version__ = "0.1.0"
