"""Exact computations with relation spaces of hyperplane arrangements and
their Orlik-Terao ideals."""

from .arrangement import (
    Arrangement,
    Graph,
    Relation,
    RelationSet,
    circuit_set,
    circuits,
    circuits_of_span,
    glued_wheel,
    graphic_arrangement,
    new_arrangement,
    relation_set,
    relation_space,
    subspace_arrangement,
    vertex_edge_arrangement,
    wheel_graph,
    yuzvinsky_variant,
)
from .covers import (
    codim_J,
    intersection_graph,
    is_cover,
    is_induced,
    is_quasi_acyclic,
    is_simple,
    minimal_primes,
    prime_certificate,
)
from .errors import (
    BudgetExceeded,
    CertificateNotFound,
    InvalidParameter,
    NotACover,
    NotInRelationSpace,
    OTIdealError,
    OverlapTooLarge,
    ParseError,
    ProportionalForms,
    ZeroForm,
)
from .formality import (
    formality_report,
    is_k_generated,
    is_R_generated,
    is_two_formal,
    truncated_ot_generators,
    verify_spanning_saturation,
)
from .polynomial import (
    SparsePolynomial,
    TermOrder,
    bounded_membership,
    iota,
    iota_relation,
    lambda_of,
    normal_form,
    universal_gb,
)

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "Graph",
    "Relation",
    "RelationSet",
    "circuit_set",
    "circuits",
    "circuits_of_span",
    "glued_wheel",
    "graphic_arrangement",
    "new_arrangement",
    "relation_set",
    "relation_space",
    "subspace_arrangement",
    "vertex_edge_arrangement",
    "wheel_graph",
    "yuzvinsky_variant",
    "codim_J",
    "intersection_graph",
    "is_cover",
    "is_induced",
    "is_quasi_acyclic",
    "is_simple",
    "minimal_primes",
    "prime_certificate",
    "BudgetExceeded",
    "CertificateNotFound",
    "InvalidParameter",
    "NotACover",
    "NotInRelationSpace",
    "OTIdealError",
    "OverlapTooLarge",
    "ParseError",
    "ProportionalForms",
    "ZeroForm",
    "formality_report",
    "is_k_generated",
    "is_R_generated",
    "is_two_formal",
    "truncated_ot_generators",
    "verify_spanning_saturation",
    "SparsePolynomial",
    "TermOrder",
    "bounded_membership",
    "iota",
    "iota_relation",
    "lambda_of",
    "normal_form",
    "universal_gb",
]
