"""Exact counting, bounds and cross-checks for the laced Boolean function."""

from .analysis import asymptotic_table, avg_sensitivity_exact, weight_exact
from .brute import SensitivityReport, brute_avg_sensitivity, brute_weight
from .core import eval_f, flip, s_of
from .counting import ResidueMultiset, count_k_subsets_mod_p, count_subsets_mod_p
from .errors import DomainError, EnumerationLimitError, NumericalFaultError
from .modmath import LacedParams, least_prime_geq

__all__ = [
    "DomainError",
    "EnumerationLimitError",
    "LacedParams",
    "NumericalFaultError",
    "ResidueMultiset",
    "SensitivityReport",
    "asymptotic_table",
    "avg_sensitivity_exact",
    "brute_avg_sensitivity",
    "brute_weight",
    "count_k_subsets_mod_p",
    "count_subsets_mod_p",
    "eval_f",
    "flip",
    "least_prime_geq",
    "s_of",
    "weight_exact",
]
__version__ = "0.1.0"
