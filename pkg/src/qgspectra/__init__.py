"""Exact spectral toolkit for equilateral and commensurate quantum graphs."""

from .errors import InternalError, UnsupportedInputError, VerificationError
from .families import (
    FormulaReport,
    build,
    closed_form,
    double,
    family_text,
    graft,
    isospectral_loop_triple,
    marked_interval,
    marked_loop,
    parse_family,
    tadpole_pair,
    validate_doubling,
    validate_formula,
    validate_tadpole_pair,
)
from .mfunction import (
    MRational,
    MSignature,
    hot_classes,
    m_rational,
    m_signature,
    same_m,
    signature_of_rational,
)
from .multigraph import (
    CombinatorialGraph,
    MetricGraph,
    canonical_key,
    char_poly,
    common_rescale,
    encode_graph6,
    equilateral,
    is_isomorphic,
    parse_graph6,
    smooth,
    subdivide,
)
from .corpusgen import connected_corpus, tree_corpus, write_corpus
from .search import (
    AuditReport,
    IsospectralSet,
    SearchConfig,
    prefilter_soundness_audit,
    search,
    sets_to_jsonl,
    tree_search,
    write_jsonl,
)
from .secular import SecularPolynomial, is_isospectral, secular_polynomial
from .spectrum import SpectralPoint, eigenvalues, graph_spectrum, spectral_factors

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "CombinatorialGraph",
    "FormulaReport",
    "InternalError",
    "IsospectralSet",
    "MRational",
    "MSignature",
    "MetricGraph",
    "SearchConfig",
    "SecularPolynomial",
    "SpectralPoint",
    "UnsupportedInputError",
    "VerificationError",
    "build",
    "canonical_key",
    "char_poly",
    "closed_form",
    "common_rescale",
    "connected_corpus",
    "double",
    "eigenvalues",
    "encode_graph6",
    "equilateral",
    "family_text",
    "graft",
    "graph_spectrum",
    "hot_classes",
    "is_isomorphic",
    "is_isospectral",
    "isospectral_loop_triple",
    "m_rational",
    "m_signature",
    "marked_interval",
    "marked_loop",
    "parse_family",
    "parse_graph6",
    "prefilter_soundness_audit",
    "same_m",
    "search",
    "secular_polynomial",
    "sets_to_jsonl",
    "signature_of_rational",
    "smooth",
    "spectral_factors",
    "subdivide",
    "tadpole_pair",
    "tree_corpus",
    "tree_search",
    "validate_doubling",
    "validate_formula",
    "validate_tadpole_pair",
    "write_corpus",
    "write_jsonl",
    "__version__",
]
