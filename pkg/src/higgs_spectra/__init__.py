"""Deformed su(2)/Higgs-algebra boson operators, their spectra on homogeneous
polynomial spaces, and partial PT classification of the eigenstates."""

from .bargmann import SpectralReport, h1_matrix, h1_spectrum, monomial_basis, spectrum, to_matrix
from .boson_algebra import BosonPolynomial, annihilator, commutator, creator, normal_multiply, to_text
from .expr_io import emit_report, parse, parse_polynomial
from .operator_zoo import DeformationParams, build_h1_algebraic, verify_algebra
from .pt_symmetry import ConjugationSpec, biorthogonality_check, classify_states

__all__ = [
    "BosonPolynomial",
    "ConjugationSpec",
    "DeformationParams",
    "SpectralReport",
    "annihilator",
    "biorthogonality_check",
    "build_h1_algebraic",
    "classify_states",
    "commutator",
    "creator",
    "emit_report",
    "h1_matrix",
    "h1_spectrum",
    "monomial_basis",
    "normal_multiply",
    "parse",
    "parse_polynomial",
    "spectrum",
    "to_matrix",
    "to_text",
    "verify_algebra",
]
