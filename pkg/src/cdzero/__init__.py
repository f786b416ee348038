"""Exact and floating arithmetic in Cayley-Dickson algebras, with spectra of
doubly pure elements and certified zero-divisor constructions."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    CDElement, Purity, PurityInfo, associator, conjugate, format_element, hat, inner, is_doubly_pure,
    is_pure, multiply, norm, norm_sq, parse_element, purity_class, quaternion_subalgebra_basis, tilde,
    trace,
)
from .errors import (  # noqa: E402
    CDError, CertificationError, LevelMismatchError, ParseError, PreconditionError, SpectrumError,
)
from .operators import (  # noqa: E402
    InvertibilityVerdict, OperatorMatrix, anticommutation_check, assoc_operator, block_decomposition,
    invertibility_test, l_squared_equals_r_squared_check, left_matrix, o2_action, right_matrix,
)
from .spectrum import (  # noqa: E402
    EigenspaceBasis, SpectrumReport, eigenspace, is_alternative, is_normed, kernel_dimension_bound_check,
    local_norm_check, spectrum,
)
from .stiefel import (  # noqa: E402
    CaseTag, HermitianValue, StiefelClassification, classify, hermitian_form, pair_inner_product_check,
    stiefel_to_nontrivial, sweep_stiefel_zero_divisors,
)
from .zerodiv import (  # noqa: E402
    Annihilator, Construction, ZeroDivisorPair, annihilator, construct_orthogonal, construct_promote_pure,
    construct_spectral, construct_tilde_partner, hat_symmetry_check, zero_divisor_is_doubly_pure_check,
)

__all__ = [
    "CDElement",
    "Purity",
    "PurityInfo",
    "associator",
    "conjugate",
    "format_element",
    "hat",
    "inner",
    "is_doubly_pure",
    "is_pure",
    "multiply",
    "norm",
    "norm_sq",
    "parse_element",
    "purity_class",
    "quaternion_subalgebra_basis",
    "tilde",
    "trace",
    "CDError",
    "CertificationError",
    "LevelMismatchError",
    "ParseError",
    "PreconditionError",
    "SpectrumError",
    "InvertibilityVerdict",
    "OperatorMatrix",
    "anticommutation_check",
    "assoc_operator",
    "block_decomposition",
    "invertibility_test",
    "l_squared_equals_r_squared_check",
    "left_matrix",
    "o2_action",
    "right_matrix",
    "spectrum",
    "EigenspaceBasis",
    "SpectrumReport",
    "eigenspace",
    "is_alternative",
    "is_normed",
    "kernel_dimension_bound_check",
    "local_norm_check",
    "CaseTag",
    "HermitianValue",
    "StiefelClassification",
    "classify",
    "hermitian_form",
    "pair_inner_product_check",
    "stiefel_to_nontrivial",
    "sweep_stiefel_zero_divisors",
    "Annihilator",
    "Construction",
    "ZeroDivisorPair",
    "annihilator",
    "construct_orthogonal",
    "construct_promote_pure",
    "construct_spectral",
    "construct_tilde_partner",
    "hat_symmetry_check",
    "zero_divisor_is_doubly_pure_check",
]
