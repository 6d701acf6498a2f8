"""Semicircular generator families with graph-prescribed commutation.

A graph on d vertices fixes which generator pairs commute (adjacent
vertices) and which are free (non-adjacent).  The package realizes the
generators as 0/1 ladder operators on a truncated Fock space over the
associated trace monoid and provides exact vacuum moments, certified
numerical lower bounds on the norm of the generator sum, and closed-form
upper and lower bounds from adjacency spectra and clique numbers.
"""

from .bounds import (
    BoundsReport,
    MatrixCoefficients,
    haar_unitary_upper,
    khintchine_rhs,
    lower_clique,
    lower_free,
    report,
    upper_clique_eigen,
    upper_eigen,
    upper_regular,
)
from .errors import (
    BadParamsError,
    BasisTooLargeError,
    GraphFockError,
    GraphFormatError,
    LetterOutOfRangeError,
    NonBinaryEntryError,
    NonSymmetricError,
    NonZeroDiagonalError,
    NotACliqueError,
    NotApplicableError,
    SizeLimitExceededError,
    SolverFailureError,
)
from .estimators import (
    LowerBoundBudget,
    NormEstimate,
    best_lower,
    clique_vector_bound,
    truncated_norm,
)
from .fock import (
    FockBasis,
    SparseOperator,
    annihilation_operator,
    check_commutation,
    creation_operator,
    semicircle_operator,
    total_semicircle_operator,
)
from .graphs import (
    CliqueData,
    Graph,
    SpectralData,
    clique_number,
    generate_family,
    load_graph,
    save_graph,
    spectrum,
    structural_predicates,
    validate,
)
from .moments import (
    MomentCalculator,
    MomentSequence,
    catalan,
    moment_norm_lower,
    sum_moments,
    vacuum_moment,
)
from .tensorops import (
    KhintchineCheck,
    TensorOperator,
    khintchine_check,
    load_coefficients,
    save_coefficients,
    tensor_operator,
)
from .traces import (
    enumerate_traces,
    equivalent,
    format_trace,
    in_reduced_index_set,
    initial_letters,
    normal_form,
)

__version__ = "0.1.0"

__all__ = [
    "BadParamsError",
    "BasisTooLargeError",
    "BoundsReport",
    "CliqueData",
    "FockBasis",
    "Graph",
    "GraphFockError",
    "GraphFormatError",
    "KhintchineCheck",
    "LetterOutOfRangeError",
    "LowerBoundBudget",
    "MatrixCoefficients",
    "MomentCalculator",
    "MomentSequence",
    "NonBinaryEntryError",
    "NonSymmetricError",
    "NonZeroDiagonalError",
    "NormEstimate",
    "NotACliqueError",
    "NotApplicableError",
    "SizeLimitExceededError",
    "SolverFailureError",
    "SparseOperator",
    "SpectralData",
    "TensorOperator",
    "annihilation_operator",
    "best_lower",
    "catalan",
    "check_commutation",
    "clique_number",
    "clique_vector_bound",
    "creation_operator",
    "enumerate_traces",
    "equivalent",
    "format_trace",
    "generate_family",
    "haar_unitary_upper",
    "in_reduced_index_set",
    "initial_letters",
    "khintchine_check",
    "khintchine_rhs",
    "load_coefficients",
    "load_graph",
    "lower_clique",
    "lower_free",
    "moment_norm_lower",
    "normal_form",
    "report",
    "save_coefficients",
    "save_graph",
    "semicircle_operator",
    "spectrum",
    "structural_predicates",
    "sum_moments",
    "tensor_operator",
    "total_semicircle_operator",
    "truncated_norm",
    "upper_clique_eigen",
    "upper_eigen",
    "upper_regular",
    "vacuum_moment",
    "validate",
]
