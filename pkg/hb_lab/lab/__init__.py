"""Heavy ball numerical laboratory: objectives, rates, dynamics, estimation, geometry and experiments."""

from .dynamics import (
    FlowTrajectory,
    Trajectory,
    hb_step,
    integrate_ode,
    lyapunov_energy,
    ode_rhs,
    pl_consistency,
    run_discrete,
    run_gradient_descent,
)
from .estimator import compare_to_theory, estimate_rate, halve_exponent, tail_window
from .geometry import (
    eb_constant_estimate,
    hessian_normal_spectrum,
    local_equivalence_report,
    pl_constant_estimate,
    probe_region,
    qg_constant_estimate,
    qsc_constant_estimate,
)
from .linalg import eigvals, jacobi_eigh, spectral_abscissa, spectral_radius
from .model import (
    ConfigError,
    ExperimentConfig,
    ExperimentReport,
    GeometryReport,
    HyperParams,
    LabError,
    Method,
    ObjectiveKind,
    ObjectiveSpec,
    RateEstimate,
    Region,
    SpectralReport,
    StopReason,
    SweepSpec,
    Verdict,
)
from .objectives import Objective, ObjectiveFactory, fd_check, make_objective, project_to_min_set, register_objective
from .rates import (
    block_eigenvalues_continuous,
    block_eigenvalues_discrete,
    continuous_system_matrix,
    discrete_system_matrix,
    fgap_theory_rate,
    gd_rate,
    m_continuous,
    m_discrete,
    optimal_alpha,
    optimal_hyperparams,
    prior_ode_rates,
    spectral_report_continuous,
    spectral_report_discrete,
)
from .runner import SweepManager, compare_methods, load_config, parse_config, run_experiment, run_sweep
