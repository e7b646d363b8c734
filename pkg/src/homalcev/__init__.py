"""Exact verification of Hom-Malcev superalgebra identities over the rationals."""

from .constructions import (
    CATALOG_KEYS,
    NotMorphismError,
    WeightedGenSpec,
    catalog_algebra,
    catalog_twists,
    random_weighted_algebra,
    skew_closure,
    yau_twist,
)
from .identities import (
    REGISTRY,
    IdentityResult,
    VerificationReport,
    check_identities,
    check_identity,
    evaluate_defect,
    g_map,
    get_identity,
    hom_super_jacobian,
    super_jacobian,
)
from .superalgebra import (
    AlgebraError,
    Element,
    EvenMap,
    SuperAlgebra,
    multiply,
    parity_of,
)
from .verifier import classify, equivalence_scan, lemma_suite

__all__ = [
    "AlgebraError",
    "CATALOG_KEYS",
    "Element",
    "EvenMap",
    "IdentityResult",
    "NotMorphismError",
    "REGISTRY",
    "SuperAlgebra",
    "VerificationReport",
    "WeightedGenSpec",
    "catalog_algebra",
    "catalog_twists",
    "check_identities",
    "check_identity",
    "classify",
    "equivalence_scan",
    "evaluate_defect",
    "g_map",
    "get_identity",
    "hom_super_jacobian",
    "lemma_suite",
    "multiply",
    "parity_of",
    "random_weighted_algebra",
    "skew_closure",
    "super_jacobian",
    "yau_twist",
]
