"""Exact correlation analysis of M-ary Sidelnikov sequences over GF(p^m)."""

from .charsums import (
    CharacterSpec,
    JacobiEvaluation,
    gauss_sum,
    jacobi_sum,
    jacobi_sum_brute,
    pure_gauss,
    pure_jacobi,
    semiprimitivity,
)
from .correlation import correlate, full_correlation, sidelnikov_upper_bound, welch_bound
from .cycint import CycInt
from .cyclotomy import CyclotomicTable, cyclotomic_numbers, cyclotomic_numbers_pure
from .distribution import (
    CorrelationDistribution,
    CrossCorrSpec,
    distribution_brute,
    distribution_by_counting,
    distribution_per_tau,
    family_report,
)
from .errors import SidelcorrError
from .gf import FieldSpec, FieldTable, build_field
from .sequences import Sequence, constant_multiple, sidelnikov

__version__ = "0.1.0"

__all__ = [
    "CharacterSpec",
    "CorrelationDistribution",
    "CrossCorrSpec",
    "CycInt",
    "CyclotomicTable",
    "FieldSpec",
    "FieldTable",
    "JacobiEvaluation",
    "Sequence",
    "SidelcorrError",
    "build_field",
    "constant_multiple",
    "correlate",
    "cyclotomic_numbers",
    "cyclotomic_numbers_pure",
    "distribution_brute",
    "distribution_by_counting",
    "distribution_per_tau",
    "family_report",
    "full_correlation",
    "gauss_sum",
    "jacobi_sum",
    "jacobi_sum_brute",
    "pure_gauss",
    "pure_jacobi",
    "semiprimitivity",
    "sidelnikov",
    "sidelnikov_upper_bound",
    "welch_bound",
]
