"""Exact Littlewood-Richardson measures, Gelfand-Tsetlin patterns and the plactic monoid."""

from .core import (
    GTPattern,
    Tableau,
    ValidationError,
    Weight,
    Word,
    YoungDiagram,
    contragredient,
    first_row_vector,
    parse_weight,
    pattern_from_tableau,
    shift_weight,
    tableau_from_pattern,
)
from .dims import count_completions, dim_by_counting, dim_by_product
from .lr import CapExceeded, LRDecomposition, lr_coefficients, lr_measure, plactic_product_histogram
from .measure import (
    ExactDist,
    check_identity,
    first_row_joint,
    marginal_ak,
    max_convolution,
    nu1_from_lr,
    sample_uniform_pattern,
)

__version__ = "0.1.0"
