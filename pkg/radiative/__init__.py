from .crossing import CrossingResult, nonthermal_crossing
from .field_correlations import (
    Inertial,
    Trajectory,
    UniformAcceleration,
    hadamard,
    pauli_jordan,
    wightman_boundary,
    wightman_free,
)
from .rates import RateBreakdown, RateEntry, rate_accelerated, rate_inertial, rate_for_trajectory, unbounded_rate
from .special_functions import (
    EvalPolicy,
    NumericDomainError,
    ReducedPoint,
    f_accel,
    f_x,
    f_y,
    f_z,
    planck_n,
    reduce,
    small_a_correction,
    small_z_coefficients,
)
