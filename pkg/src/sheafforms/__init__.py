"""Exact-arithmetic orthogonal and symplectic geometry for free modules over
locally constant field algebras on finite topological spaces.

Everything is computed over exact fields (rationals or odd prime fields), so
every equality in the library is decided with zero tolerance, and the main
constructions (symplectic Gram-Schmidt, normal form, hyperbolic envelopes,
Witt isometry extension) return objects whose defining equations can be
re-verified directly.
"""

from .algebra import AlgebraSection
from .bilinear import (
    BilinearForm,
    CovectorSection,
    OrthoClass,
    OrthogonalSplit,
    OrthoWitness,
    classify_orthosymmetry,
)
from .errors import (
    Degenerate,
    EmptyOpen,
    FreenessViolated,
    IsometryHypothesisViolated,
    IsotropicSubmodule,
    MissingEmptyOrTotal,
    ModuleMismatch,
    NotAlternating,
    NotASubset,
    NotClosedUnderIntersection,
    NotClosedUnderUnion,
    NotFree,
    NotNowhereZero,
    NotOrthosymmetric,
    NotTotallyIsotropic,
    OddRank,
    OpenMismatch,
    ParseError,
    PartialRelationsViolated,
    PartnerNotFound,
    RankMismatch,
    SheafFormsError,
    UnknownSuite,
)
from .fields import FpElement, PrimeField, RationalField, field_from_name
from .modules import (
    FreeModule,
    ModuleSection,
    Submodule,
    from_rows,
    full_submodule,
    intersect_submodules,
    span,
    sum_submodules,
    zero_submodule,
)
from .symplectic import (
    HyperbolicPlane,
    Isometry,
    PartialFamily,
    SymplecticBasis,
    certify_basis,
    certify_envelope,
    compose_isometries,
    gram_schmidt_extend,
    hyperbolic_decomposition,
    hyperbolic_envelope,
    invert_isometry,
    normal_form,
    standard_alternating,
    standard_isometry,
    standard_symplectic_form,
    validate_symplectic,
    witt_extend,
)
from .topology import FiniteSpace, components_by_separation, validate_topology

__version__ = "0.1.0"

__all__ = [
    "AlgebraSection",
    "BilinearForm",
    "CovectorSection",
    "Degenerate",
    "EmptyOpen",
    "FiniteSpace",
    "FpElement",
    "FreeModule",
    "FreenessViolated",
    "HyperbolicPlane",
    "Isometry",
    "IsometryHypothesisViolated",
    "IsotropicSubmodule",
    "MissingEmptyOrTotal",
    "ModuleMismatch",
    "ModuleSection",
    "NotASubset",
    "NotAlternating",
    "NotClosedUnderIntersection",
    "NotClosedUnderUnion",
    "NotFree",
    "NotNowhereZero",
    "NotOrthosymmetric",
    "NotTotallyIsotropic",
    "OddRank",
    "OpenMismatch",
    "OrthoClass",
    "OrthoWitness",
    "OrthogonalSplit",
    "ParseError",
    "PartialFamily",
    "PartialRelationsViolated",
    "PartnerNotFound",
    "PrimeField",
    "RankMismatch",
    "RationalField",
    "SheafFormsError",
    "Submodule",
    "SymplecticBasis",
    "UnknownSuite",
    "certify_basis",
    "certify_envelope",
    "classify_orthosymmetry",
    "compose_isometries",
    "field_from_name",
    "from_rows",
    "full_submodule",
    "gram_schmidt_extend",
    "hyperbolic_decomposition",
    "hyperbolic_envelope",
    "intersect_submodules",
    "invert_isometry",
    "normal_form",
    "span",
    "standard_alternating",
    "standard_isometry",
    "standard_symplectic_form",
    "sum_submodules",
    "validate_symplectic",
    "validate_topology",
    "witt_extend",
    "zero_submodule",
    "components_by_separation",
]
