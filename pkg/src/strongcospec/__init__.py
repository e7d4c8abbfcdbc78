"""Exact and numeric tools for strongly cospectral vertices in graphs."""

from .alphalab import (
    AlphaFunction,
    AuditReport,
    LambdaFunction,
    alpha,
    alpha_branch_properties,
    alpha_criterion_strongly_cospectral,
    alpha_of,
    contraction_identity_check,
    contraction_identity_details,
    extended_contraction_eval,
    key_lemma_audit,
    lambda_,
    lambda_function,
    lambda_infinity_check,
    lambda_of,
)
from .charpoly import charpoly
from .cospectral import (
    PairDecision,
    all_pair_decisions,
    are_cospectral,
    are_strongly_cospectral_exact,
    cospectral_groups,
    derivative_identity_check,
    path_sum_poly,
    phi,
    strongly_cospectral_classes,
    strongly_cospectral_pairs,
    wronskian_identity_check,
)
from .errors import (
    ConfigurationError,
    DomainError,
    Graph6Error,
    InfiniteEntryError,
    PrecisionError,
    PreconditionError,
    StrongCospecError,
    UndefinedExtendedArithmetic,
    VerificationFailure,
)
from .extended import INF, ExtendedValue, ratfunc_eval_extended
from .graphs import (
    Graph,
    TreeStream,
    cartesian_product,
    complete_graph,
    cycle_graph,
    delete_vertices,
    empty_graph,
    enumerate_trees,
    parse_graph6,
    path_graph,
    spider_graph,
    star_graph,
    to_graph6,
)
from .harness import CampaignReport, audit_cut_triples, find_sets, fuzz_identities, verify_trees
from .poly import IntPoly, RatFunc, poly_gcd, squarefree_decomposition, squarefree_part
from .realroots import RealRoot, isolate_real_roots
from .spectral import (
    SpectralDecomposition,
    eigendecompose,
    projector_entry_diag,
    projector_entry_offdiag,
    strongly_cospectral_numeric,
)

__version__ = "0.1.0"
