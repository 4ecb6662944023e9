"""Energy rates of two atoms coupled to the vacuum massless scalar field,
split into vacuum-fluctuation and radiation-reaction parts."""

from .atom_stats import ExponentialSum, brute_force_statistics, c_atoms, chi_atom, derivative
from .correlations import (
    BoundaryTerm,
    C_F_regularized,
    Delta,
    DistributionalKernel,
    chi_F_kernel,
    chi_F_regularized,
    wightman_regularized,
)
from .model import (
    AtomPairParams,
    ExtrapolationRecord,
    Method,
    NonConvergenceError,
    PreparedState,
    RateBreakdown,
    parity_sign,
    rate_unit,
    state_energy,
)
from .quadrature import QuadratureConfig
from .rates import (
    KernelPairingError,
    closed_form_accelerated,
    closed_form_inertial,
    pair_kernel,
    rate_rr_analytic,
    rate_rr_numeric,
    rate_total,
    rate_vf,
    thermal_comparison,
)
from .worldlines import Inertial, UniformAcceleration, WorldlinePair, event_at, invariant_interval, lag_interval

__version__ = "0.1.0"
