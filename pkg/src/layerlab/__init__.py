"""Numerics for collapsing multi-interface solutions of the radial
Allen-Cahn equation: interaction constants, the gap ODE, Toda-type layer
systems with their Picard correction, a finite-difference solver, and
track analysis utilities.
"""

__version__ = "0.1.0"

from .errors import (
    CollisionError,
    ConfigError,
    DomainError,
    EigenFailure,
    GridMismatch,
    InterfaceLost,
    LayerlabError,
    LinAlgFailure,
    NoContraction,
    NonConvergence,
    OrderingViolation,
    SchemaMismatch,
    SpuriousInterface,
    StepFailure,
    WindowMismatch,
    WindowTooShort,
)
from .quadrature import adaptive_quad
from .profile import (
    BETA_REFERENCE,
    SQRT2,
    InteractionConstants,
    compute_beta,
    double_well,
    heteroclinic,
    nonlinearity,
    profile_derivative,
    profile_second_derivative,
    shrinking_sphere,
)
from .rk import OdeSolution, solve_ode
from .toda import (
    EtaSolution,
    LayerState,
    PicardReport,
    ReductionMatrices,
    TodaConstants,
    TodaTrajectory,
    asymptotic_separation,
    first_approximation,
    geometric_decrease,
    integrate_toda,
    layer_coefficients,
    picard_correction,
    picard_damping_factor,
    reduction_matrices,
    solve_eta,
    toda_constants,
    toda_rhs,
    verify_lemma52_residual,
)
from .ansatz import (
    MultiLayerAnsatz,
    WeightFunction,
    check_error_bound,
    error_term,
    evaluate_z,
    weight_phi,
    weighted_norm,
)
from .stepper import BACKEND_NAME
from .pde import (
    EvolveResult,
    RadialField,
    RadialGrid,
    SolverConfig,
    discrete_operator,
    evolve,
    operator_bands,
    rescale_check,
    step,
)
from .analysis import (
    AsymptoticFit,
    InterfaceTrack,
    ProjectionDiagnostics,
    TrackComparison,
    compare_pde_vs_toda,
    extract_interfaces,
    extract_interfaces_with_signs,
    fit_theorem12,
    mcf_residual,
    project_residual,
    smoothed_velocity,
)

__all__ = [name for name in dir() if not name.startswith("_")]
