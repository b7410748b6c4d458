"""Sharp moment bounds for sums of non-negative numbers and for
probabilities of unions of events.

The scalar layer bounds sum(r) for an unknown non-negative vector r from its
power moments s_k = sum_i i**(a + (k-1)*rho) * r_i. The probability layer
applies those bounds per event and to the occupancy profile of an exact
finite probability space, recovering the classic Chung-Erdos, de Caen and
fractional-window second-moment bounds as special cases. A third layer
estimates limsup (Borel-Cantelli) probabilities at finite horizons.

Arithmetic stays exact over the rationals whenever the inputs allow it.
"""

from .bounds import (
    DEFAULT_INEQUALITY_TOLERANCE,
    DEFAULT_REPRODUCTION_TOLERANCE,
    TOLERANCE_ENV_VAR,
    VARIANTS,
    WINDOW_PATTERNS,
    CertificateError,
    DegenerateBoundWarning,
    DeltaDecomposition,
    ExponentParams,
    GeneralBoundOutcome,
    InfeasibleIndicesError,
    MomentConsistencyError,
    MomentVector,
    delta_decomposition,
    exhaustive_index_search,
    general_bound,
    holder_lower_bound,
    inequality_tolerance,
    lower_bound_three_moments,
    lower_bound_two_moments,
    lower_bound_two_moments_simple,
    power_feature_matrix,
    select_index_window,
    upper_bound_three_moments,
    upper_bound_two_moments,
)
from .borel_cantelli import (
    BCEstimate,
    ExplicitSequence,
    IdenticalSequence,
    IndependentSequence,
    bc_lower_estimate,
    bc_upper_estimate,
    kochen_stone_ratio,
)
from .events import (
    EventSystem,
    JointOccupancy,
    OccupancyProfile,
    PerEventMoments,
    build_system,
    exact_union_probability,
    joint_occupancy,
    occupancy_profile,
    per_event_moments,
    power_moments,
    random_system,
)
from .unions import (
    BOUND_NAMES,
    BoundEntry,
    BoundReport,
    chung_erdos,
    compare_bounds,
    de_caen,
    holder_union_bound,
    kat_bound,
    occupancy_moment_vector,
    union_lower_three,
    union_lower_two,
    union_upper_three,
)

__version__ = "0.1.0"

__all__ = [
    "BCEstimate",
    "BOUND_NAMES",
    "BoundEntry",
    "BoundReport",
    "CertificateError",
    "DEFAULT_INEQUALITY_TOLERANCE",
    "DEFAULT_REPRODUCTION_TOLERANCE",
    "DegenerateBoundWarning",
    "DeltaDecomposition",
    "EventSystem",
    "ExplicitSequence",
    "ExponentParams",
    "GeneralBoundOutcome",
    "IdenticalSequence",
    "IndependentSequence",
    "InfeasibleIndicesError",
    "JointOccupancy",
    "MomentConsistencyError",
    "MomentVector",
    "OccupancyProfile",
    "PerEventMoments",
    "TOLERANCE_ENV_VAR",
    "VARIANTS",
    "WINDOW_PATTERNS",
    "bc_lower_estimate",
    "bc_upper_estimate",
    "build_system",
    "chung_erdos",
    "compare_bounds",
    "de_caen",
    "delta_decomposition",
    "exact_union_probability",
    "exhaustive_index_search",
    "general_bound",
    "holder_lower_bound",
    "holder_union_bound",
    "inequality_tolerance",
    "joint_occupancy",
    "kat_bound",
    "kochen_stone_ratio",
    "lower_bound_three_moments",
    "lower_bound_two_moments",
    "lower_bound_two_moments_simple",
    "occupancy_moment_vector",
    "occupancy_profile",
    "per_event_moments",
    "power_feature_matrix",
    "power_moments",
    "random_system",
    "select_index_window",
    "union_lower_three",
    "union_lower_two",
    "union_upper_three",
    "upper_bound_three_moments",
    "upper_bound_two_moments",
    "__version__",
]
