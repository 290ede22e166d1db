"""Nearly disjoint hypergraph families and separation-choosability bounds.

The package builds families of r-uniform hypergraphs on a shared vertex
set in which any two edges from different members meet in at most one
vertex and every member has small independence number; such families are
exactly the 1-separated list assignments of complete multipartite targets,
and certify lower bounds on their separation choosability.  Exact
independence and class-partition solvers, first-moment threshold
calculators, and a CLI round it out.
"""

from .bounds import (
    BoundReport,
    UnbalancedReport,
    asymptotic_value,
    bound_report,
    expected_unhappy,
    lower_threshold,
    unbalanced_lower_threshold,
    upper_threshold,
)
from .coloring import (
    Certificate,
    CertificateResult,
    ColorPartition,
    ListAssignment,
    MultipartiteSpec,
    check_partition,
    check_separation,
    family_from_lists,
    lists_from_family,
    realize_coloring,
    solve_exact,
    solve_random,
    verify_certificate,
)
from .construct import (
    CapacityError,
    ConstructionParams,
    ConstructionTrace,
    EnumerationCapExceeded,
    RetriesExhausted,
    corollary_targets,
    greedy_transversal,
    greedy_transversal_bound,
    iterative_family,
    lemma1_construct,
    pad_family,
)
from .hypergraphs import (
    BudgetExceeded,
    Hypergraph,
    HypergraphFamily,
    PartitionStructure,
    are_nearly_disjoint,
    independence_number,
    is_independent,
    is_transversal,
    max_degree,
    maximum_independent_set,
    validate,
)

__all__ = [
    "BoundReport",
    "BudgetExceeded",
    "CapacityError",
    "Certificate",
    "CertificateResult",
    "ColorPartition",
    "ConstructionParams",
    "ConstructionTrace",
    "EnumerationCapExceeded",
    "Hypergraph",
    "HypergraphFamily",
    "ListAssignment",
    "MultipartiteSpec",
    "PartitionStructure",
    "RetriesExhausted",
    "UnbalancedReport",
    "are_nearly_disjoint",
    "asymptotic_value",
    "bound_report",
    "check_partition",
    "check_separation",
    "corollary_targets",
    "expected_unhappy",
    "family_from_lists",
    "greedy_transversal",
    "greedy_transversal_bound",
    "independence_number",
    "is_independent",
    "is_transversal",
    "iterative_family",
    "lemma1_construct",
    "lists_from_family",
    "lower_threshold",
    "max_degree",
    "maximum_independent_set",
    "pad_family",
    "realize_coloring",
    "solve_exact",
    "solve_random",
    "unbalanced_lower_threshold",
    "upper_threshold",
    "validate",
    "verify_certificate",
]
