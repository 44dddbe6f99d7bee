"""Monotonicity tests and maximal monotone extensions of linear relations on R^n."""

from .errors import (
    AmbientMismatch,
    BadParameters,
    BadWitness,
    DependentGeneratorsWarning,
    GenerationFailed,
    InternalInconsistency,
    MonoextError,
    NotAnExtension,
    NotApplicable,
    NotFinite,
    NotMaximal,
    NotMonotone,
    NotSquare,
    NotSymmetric,
    RankDeficient,
    ShapeMismatch,
)
from .extend import (
    ExtensionResult,
    enumerate_extension_witness,
    extend,
    extend_domain_preserving,
    extend_hat,
    extend_range_preserving,
    extend_vg,
    extend_with_M,
    extend_with_N,
    normal_cone_relation,
    union_counterexample,
)
from .linrel import (
    KernelForm,
    LinearRelation,
    RangeForm,
    adjoint,
    domain,
    extension_of,
    from_graph,
    from_kernel,
    from_range,
    graph_contains,
    identity_relation,
    image_at_zero,
    inverse,
    is_single_valued,
    kernel_of,
    range_of,
    range_of_id_plus,
    reduce_rows,
    single_valued_matrix,
    to_kernel,
    to_range,
    zero_relation,
)
from .minty import (
    MintyMap,
    co_resolvent,
    column_rank_check,
    domain_range_via_resolvent,
    firmly_nonexpansive_check,
    minty_criterion,
    minty_graph,
    minty_map,
    resolvent,
)
from .monotone import (
    EigenSplit,
    MonotonicityReport,
    adjoint_monotone,
    brezis_browder_check,
    eigen_split,
    is_maximal,
    is_monotone,
)
from .numerics import (
    DEFAULT_TOL,
    Subspace,
    Tolerance,
    echelon_basis,
    nullspace,
    orth_complement,
    pinv,
    span,
    subspace_contains,
    subspace_equal,
    subspace_includes,
    subspace_sum,
    svd_rank,
    sym_eig,
)

__version__ = "0.1.0"
