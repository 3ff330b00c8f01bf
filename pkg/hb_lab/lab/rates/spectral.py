"""Generic eigenvalues of the system matrices checked against the block formulas."""

from typing import Optional

import numpy as np

from ..linalg import eigvals, jacobi_eigh
from ..model import InvalidSpecError, SpectralReport, StabilityRangeError
from .formulas import m_continuous, m_discrete
from .system_matrix import (
    block_eigenvalues_continuous,
    block_eigenvalues_discrete,
    continuous_system_matrix,
    discrete_system_matrix,
)


def _pairs(eigs: np.ndarray):
    return [(float(z.real), float(z.imag)) for z in eigs]


def spectral_report_discrete(H, d_t: int, gamma: float, beta: float) -> SpectralReport:
    """Spectral radius of the discrete system matrix by QR and by the block formulas.

    ``theory_rate`` is m(gamma, beta) for the extreme eigenvalues of ``H``; it is left empty
    when gamma is outside the stability range.
    """
    a = discrete_system_matrix(H, d_t, gamma, beta)
    eigs = eigvals(a)
    rho = float(np.max(np.abs(eigs)))
    lams, _ = jacobi_eigh(H)
    moduli = [abs(z) for lam in lams for z in block_eigenvalues_discrete(lam, gamma, beta)]
    closed = max(moduli + ([beta] if d_t > 0 else []))
    theory: Optional[float]
    try:
        theory = m_discrete(gamma, beta, float(lams[0]), float(lams[-1]))
    except (StabilityRangeError, InvalidSpecError):
        theory = None
    return SpectralReport(
        kind='discrete',
        eigenvalues=_pairs(eigs),
        rho=rho,
        closed_form=closed,
        theory_rate=theory,
        max_abs_discrepancy=abs(rho - closed),
    )


def spectral_report_continuous(H, d_t: int, alpha: float) -> SpectralReport:
    """Spectral abscissa of the continuous system matrix by QR and by the block formulas."""
    a = continuous_system_matrix(H, d_t, alpha)
    eigs = eigvals(a)
    abscissa = float(np.max(eigs.real))
    lams, _ = jacobi_eigh(H)
    reals = [z.real for lam in lams for z in block_eigenvalues_continuous(lam, alpha)]
    closed = max(reals + ([-alpha] if d_t > 0 else []))
    theory = m_continuous(alpha, float(lams[0])) if lams[0] > 0 else None
    return SpectralReport(
        kind='continuous',
        eigenvalues=_pairs(eigs),
        abscissa=abscissa,
        closed_form=closed,
        theory_rate=theory,
        max_abs_discrepancy=abs(abscissa - closed),
    )
