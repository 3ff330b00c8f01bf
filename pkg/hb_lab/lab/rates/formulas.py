"""Closed-form convergence rates and optimal hyperparameters of the heavy ball method."""

import math
from typing import List, Tuple

from pydantic import BaseModel, Field

from ...utils import get_logger
from ..model import HyperParams, InvalidSpecError, StabilityRangeError

logger = get_logger()

# Relative slack on the sqrt(beta) plateau bounds; at the optimum both bounds equal gamma up to roundoff.
PLATEAU_RTOL = 1e-12


def _require_positive(**values: float) -> None:
    for name, v in values.items():
        if not (v > 0 and math.isfinite(v)):
            raise InvalidSpecError(f'{name}={v} must be positive')


def _require_ordered(mu: float, L: float) -> None:
    _require_positive(mu=mu, L=L)
    if mu > L:
        raise InvalidSpecError(f'need mu <= L, got mu={mu}, L={L}')


def m_continuous(alpha: float, mu: float) -> float:
    """Exponential rate of the heavy ball ODE, 1/2 (alpha - sqrt(max(0, alpha^2 - 4 mu)))."""
    _require_positive(alpha=alpha, mu=mu)
    return 0.5 * (alpha - math.sqrt(max(0.0, alpha * alpha - 4 * mu)))


def optimal_alpha(mu: float) -> float:
    """Friction 2 sqrt(mu) maximizing ``m_continuous``."""
    _require_positive(mu=mu)
    return 2 * math.sqrt(mu)


def m_discrete(gamma: float, beta: float, mu: float, L: float) -> float:
    """Per-iteration rate m(gamma, beta) of the discrete heavy ball method.

    Branches:
        * sqrt(beta) when gamma lies in the closed interval [(1 - sqrt(beta))^2 / mu, (1 + sqrt(beta))^2 / L]
          (widened by a relative 1e-12 so the optimal pair lands on the plateau)
        * (1 + beta - gamma mu) / 2 + sqrt(((1 + beta - gamma mu) / 2)^2 - beta) when gamma <= 2(1+beta)/(L+mu)
        * (gamma L - 1 - beta) / 2 + sqrt(((1 + beta - gamma L) / 2)^2 - beta) otherwise

    ``beta = 0`` is accepted as the gradient-descent limit max(|1 - gamma mu|, |1 - gamma L|).

    Raises:
        InvalidSpecError: If mu, L are not 0 < mu <= L or beta is outside [0, 1)
        StabilityRangeError: If gamma is outside (0, 2(1+beta)/L)
    """
    _require_ordered(mu, L)
    if not 0 <= beta < 1:
        raise InvalidSpecError(f'momentum beta={beta} outside the range (0, 1)')
    bound = 2 * (1 + beta) / L
    if not 0 < gamma < bound:
        raise StabilityRangeError(f'step size gamma={gamma} outside the stability range (0, {bound})')

    if beta == 0:
        logger.warning_once('m_discrete called with beta = 0: gradient-descent limit, outside beta in (0, 1)')
        return max(abs(1 - gamma * mu), abs(1 - gamma * L))

    sb = math.sqrt(beta)
    lo, hi = (1 - sb)**2 / mu, (1 + sb)**2 / L
    if lo * (1 - PLATEAU_RTOL) <= gamma <= hi * (1 + PLATEAU_RTOL):
        return sb
    if gamma <= 2 * (1 + beta) / (L + mu):
        half = 0.5 * (1 + beta - gamma * mu)
        return half + math.sqrt(max(half * half - beta, 0.0))
    half = 0.5 * (gamma * L - 1 - beta)
    return half + math.sqrt(max(half * half - beta, 0.0))


def optimal_hyperparams(mu: float, L: float) -> HyperParams:
    """Pair minimizing ``m_discrete``: gamma = 4/(sqrt(mu)+sqrt(L))^2, beta = ((sqrt(kappa)-1)/(sqrt(kappa)+1))^2."""
    _require_ordered(mu, L)
    sk = math.sqrt(L / mu)
    gamma = 4 / (math.sqrt(mu) + math.sqrt(L))**2
    beta = ((sk - 1) / (sk + 1))**2
    return HyperParams(gamma=gamma, beta=beta)


def optimal_discrete_rate(mu: float, L: float) -> float:
    """(sqrt(kappa) - 1) / (sqrt(kappa) + 1)."""
    _require_ordered(mu, L)
    sk = math.sqrt(L / mu)
    return (sk - 1) / (sk + 1)


def gd_rate(kappa: float) -> float:
    """Gradient-descent rate (kappa - 1)/(kappa + 1) at gamma = 2/(L + mu)."""
    if not (kappa >= 1 and math.isfinite(kappa)):
        raise InvalidSpecError(f'condition number kappa={kappa} must be >= 1')
    return (kappa - 1) / (kappa + 1)


def gd_step(mu: float, L: float) -> float:
    _require_ordered(mu, L)
    return 2 / (L + mu)


def fgap_theory_rate(distance_rate: float, continuous: bool) -> float:
    """Function-gap rate implied by a distance rate: squared per iteration, doubled per unit time."""
    return 2 * distance_rate if continuous else distance_rate * distance_rate


class PriorRate(BaseModel):
    """A published f-gap exponent of the heavy ball ODE with its recommended friction."""

    assumption: str = Field(..., description='Hypothesis the rate was proved under')
    rate: float = Field(..., description='Exponent of f(x_t) - f*')
    alpha: float = Field(..., description='Friction achieving the rate')


def prior_ode_rates(mu: float, L: float) -> List[PriorRate]:
    """Previously published f-gap exponents of the heavy ball ODE next to 2 sqrt(mu).

    The PL entry depends on kappa = L / mu through the 9/8 threshold.
    """
    _require_ordered(mu, L)
    kappa = L / mu
    rm = math.sqrt(mu)
    rows: List[Tuple[str, float, float]] = [
        ('strongly convex', 2 * rm, 2 * rm),
        ('strongly convex (critical)', rm, 2 * rm),
        ('quasi-strongly convex', math.sqrt(2 * mu), 3 * math.sqrt(mu / 2)),
        ('quadratic growth', (2 - math.sqrt(2)) * rm, (2 - math.sqrt(2) / 2) * rm),
    ]
    if kappa <= 9 / 8:
        rows.append(('PL', math.sqrt(2 * mu), rm / (2 * math.sqrt(2)) * (5 + math.sqrt(9 - 8 * kappa))))
    else:
        sk, sk1 = math.sqrt(kappa), math.sqrt(kappa - 1)
        rows.append(('PL', 2 * (sk - sk1) * rm, (2 * sk - sk1) * rm))
    rows.append(('PL, local (this library)', 2 * rm, optimal_alpha(mu)))
    return [PriorRate(assumption=a, rate=r, alpha=al) for a, r, al in rows]
