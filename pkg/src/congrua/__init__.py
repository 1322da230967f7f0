"""Exact simultaneous orthogonalization of symmetric bilinear forms.

Decides whether a finite family of symmetric bilinear forms over Q or F_p
admits a common orthogonal basis, returning the basis or a checkable
certificate, and applies the decision to evolution algebras.
"""

from .errors import (AmbientMismatch, CongruaError, DimensionMismatch, DivisionByZero,
                     FieldMismatch, NotCommutative, NotSymmetric, ParseError, Singular,
                     SingularPivot)
from .evolution import (AlgebraStructure, EvolutionReport, detect_evolution, emit_test_ideal,
                        forms_from_algebra, parse_test_ideal, square_table, structure_matrix)
from .field import GF, QQ, FieldSpec, Scalar
from .forms import (CombinationSearch, CombinationWitness, FormFamily, check_f_supplement,
                    f_supplement, find_nondegenerate_combination, independent_subfamily,
                    orthogonal_basis_single, radical_of_family)
from .linalg import (Matrix, Subspace, det, eigenspace, inverse, left_kernel, min_poly, rank,
                     rref)
from .orthogonalizer import (AlternatingEigenspace, Certificate, DecompositionNode,
                             NonCommutingPair, NonSplitMinimalPolynomial, OrthoResult,
                             SingleFormUnorthogonalizable, TooManyIndependentForms,
                             UnsupplementedRadical, Verdict, certificate_from_dict,
                             check_certificate, erdamus_step,
                             joint_eigenspaces, orthogonalize, solve_nondegenerate,
                             solve_zero_radical, verify)
from .poly import Polynomial, distinct_linear_roots

__version__ = "0.1.0"

__all__ = [
    "AlgebraStructure",
    "AlternatingEigenspace",
    "AmbientMismatch",
    "Certificate",
    "CombinationSearch",
    "CombinationWitness",
    "CongruaError",
    "DecompositionNode",
    "DimensionMismatch",
    "DivisionByZero",
    "EvolutionReport",
    "FieldMismatch",
    "FieldSpec",
    "FormFamily",
    "GF",
    "Matrix",
    "NonCommutingPair",
    "NonSplitMinimalPolynomial",
    "NotCommutative",
    "NotSymmetric",
    "OrthoResult",
    "ParseError",
    "Polynomial",
    "QQ",
    "Scalar",
    "SingleFormUnorthogonalizable",
    "Singular",
    "SingularPivot",
    "Subspace",
    "TooManyIndependentForms",
    "UnsupplementedRadical",
    "Verdict",
    "certificate_from_dict",
    "check_certificate",
    "check_f_supplement",
    "det",
    "detect_evolution",
    "distinct_linear_roots",
    "eigenspace",
    "emit_test_ideal",
    "erdamus_step",
    "f_supplement",
    "find_nondegenerate_combination",
    "forms_from_algebra",
    "independent_subfamily",
    "inverse",
    "joint_eigenspaces",
    "left_kernel",
    "min_poly",
    "orthogonal_basis_single",
    "orthogonalize",
    "parse_test_ideal",
    "radical_of_family",
    "rank",
    "rref",
    "solve_nondegenerate",
    "solve_zero_radical",
    "square_table",
    "structure_matrix",
    "verify",
]
