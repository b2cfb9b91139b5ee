"""Root groupoids of Kac-Moody superalgebras: reflexions, skeleta, Weyl groups, types and uniqueness."""
from .cartan import (
    CartanDatum, DiagonalScaling, KacType, Violation, d_equivalent, is_indecomposable, is_isotropic,
    is_locally_weakly_symmetric, is_reflectable, is_symmetrizable, kac_vector_type,
)
from .classify import ClassificationResult, ConeOverApprox, UniquenessReport, classify, compute_cone, uniqueness_report
from .errors import DomainError, InternalError, NotReflectableError, ParseError, RootGroupoidError
from .groups import AutReport, SkDElement, aut_report, k_dimension, skd_elements, skd_multiply, spd_subgroup
from .rootdatum import (
    Realization, RootDatumVertex, apply_homothety, apply_word, base_vertex, cartan_matrix, direct_sum, reflect,
    standard_realization, weyl_vector,
)
from .skeleton import (
    ExplorationLimits, SkeletonGraph, check_admissibility, distance, explore_skeleton, explore_spine, export_dot,
    lambda_embedding, verify_coxeter,
)
from .weyl import (
    CoxeterMatrix, PrincipalRoots, RealRoot, WeylElement, coxeter_matrix, enumerate_real_roots, length,
    principal_roots, reduced_word,
)

__all__ = [
    "CartanDatum",
    "DiagonalScaling",
    "KacType",
    "Violation",
    "d_equivalent",
    "is_indecomposable",
    "is_isotropic",
    "is_locally_weakly_symmetric",
    "is_reflectable",
    "is_symmetrizable",
    "kac_vector_type",
    "ClassificationResult",
    "ConeOverApprox",
    "UniquenessReport",
    "classify",
    "compute_cone",
    "uniqueness_report",
    "DomainError",
    "InternalError",
    "NotReflectableError",
    "ParseError",
    "RootGroupoidError",
    "AutReport",
    "SkDElement",
    "aut_report",
    "k_dimension",
    "skd_elements",
    "skd_multiply",
    "spd_subgroup",
    "Realization",
    "RootDatumVertex",
    "apply_homothety",
    "apply_word",
    "base_vertex",
    "cartan_matrix",
    "direct_sum",
    "reflect",
    "standard_realization",
    "weyl_vector",
    "ExplorationLimits",
    "SkeletonGraph",
    "check_admissibility",
    "distance",
    "explore_skeleton",
    "explore_spine",
    "export_dot",
    "lambda_embedding",
    "verify_coxeter",
    "CoxeterMatrix",
    "PrincipalRoots",
    "RealRoot",
    "WeylElement",
    "coxeter_matrix",
    "enumerate_real_roots",
    "length",
    "principal_roots",
    "reduced_word",
]

__version__ = "0.1.0"
