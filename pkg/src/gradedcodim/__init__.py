"""Graded codimension sequences of finite-dimensional graded algebras, computed exactly."""

from .algebra import GradedAlgebraSpec, GroupTable, homogeneous_basis, load_spec, load_spec_file, multiply
from .asymptotics import (AsymptoticFit, binomial_growth_check, binomial_invert, binomial_lift, estimate_alpha,
                          estimate_beta, estimate_exponent, filter_sum_check, filter_sum_check_exact, fit)
from .codim import (Budgets, CocharacterRow, CodimEngine, CodimTable, a_multiplicities, cocharacter_multiplicities,
                    graded_codim, multilinear_codim, proper_deltas, weight_space_dim)
from .partitions import (Partition, dim_irrep, kostka, lower_strip_set, partitions_of, pieri_expand)
from .symseries import (SchurExpansion, SymSeries, a_from_m, expand_in_schur, free_poly_series, m_from_a,
                        schur_poly)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticFit", "Budgets", "CocharacterRow", "CodimEngine", "CodimTable", "GradedAlgebraSpec", "GroupTable",
    "Partition", "SchurExpansion", "SymSeries", "a_from_m", "a_multiplicities", "binomial_growth_check",
    "binomial_invert", "binomial_lift", "cocharacter_multiplicities", "dim_irrep", "estimate_alpha", "estimate_beta",
    "estimate_exponent", "expand_in_schur", "filter_sum_check", "filter_sum_check_exact", "fit", "free_poly_series",
    "graded_codim", "homogeneous_basis", "kostka", "load_spec", "load_spec_file", "lower_strip_set", "m_from_a",
    "multilinear_codim", "multiply", "partitions_of", "pieri_expand", "proper_deltas", "schur_poly",
    "weight_space_dim",
]
