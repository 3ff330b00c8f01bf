"""Closed-form rates and the spectral analysis of the heavy ball system matrices."""

from ..linalg import spectral_abscissa, spectral_radius
from .formulas import (
    PriorRate,
    fgap_theory_rate,
    gd_rate,
    gd_step,
    m_continuous,
    m_discrete,
    optimal_alpha,
    optimal_discrete_rate,
    optimal_hyperparams,
    prior_ode_rates,
)
from .spectral import spectral_report_continuous, spectral_report_discrete
from .system_matrix import (
    block_eigenvalues_continuous,
    block_eigenvalues_discrete,
    continuous_system_matrix,
    discrete_system_matrix,
)
