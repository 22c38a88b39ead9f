"""Exact computation of SIA, Sarymsakov, scrambling and positive-column
indices for finite sets of stochastic-matrix zero patterns."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .classes import (
    ClassReport,
    classify,
    eventually_positive_columns,
    is_positive_column,
    is_primitive,
    is_sarymsakov,
    is_scrambling,
    is_sia,
    local_exponent,
)
from .families import cerny_set, family, line_automaton, wielandt_matrix, wielandt_set
from .indices import (
    ClassTag,
    IndexResult,
    all_indices,
    exists_sia_product,
    naive_sia_index,
    pc_index,
    sar_index,
    scr_index,
    sia_index,
)
from .patterns import (
    BooleanPattern,
    MatrixFormatError,
    MatrixSet,
    PatternError,
    StochasticMatrix,
    consequent,
    dumps_matrix_set,
    loads_matrix_set,
    pattern_of,
)
from .search import SearchSummary, max_sia_index
from .words import lyndon_words
