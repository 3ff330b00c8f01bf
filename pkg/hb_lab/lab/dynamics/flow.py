"""Heavy ball ODE x' = v, v' = -alpha v - grad f(x), integrated with fixed-step RK4."""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ...utils import get_logger
from ..model import DimensionError, PreconditionError, StopReason
from ..objectives import Objective
from ..objectives.base import ArrayLike
from ..rates import m_continuous
from .lyapunov import energy_from_oracles

logger = get_logger()

STABILITY_FACTOR = 0.1
DEFAULT_HORIZON_DECAYS = 40.0


@dataclass
class FlowTrajectory:
    """States (x_t, v_t) on the grid t_k = k h."""

    times: np.ndarray
    states: np.ndarray
    f_gaps: np.ndarray
    grad_norms: np.ndarray
    energy: np.ndarray
    stop_reason: StopReason
    alpha: float
    step: float
    L: float

    def __len__(self) -> int:
        return len(self.times)

    @property
    def steps(self) -> int:
        return len(self.times) - 1

    @property
    def dim(self) -> int:
        return self.states.shape[1] // 2

    @property
    def positions(self) -> np.ndarray:
        return self.states[:, :self.dim]

    @property
    def velocities(self) -> np.ndarray:
        return self.states[:, self.dim:]

    @property
    def final(self) -> np.ndarray:
        return self.positions[-1]

    @property
    def dist_to_final(self) -> np.ndarray:
        return np.linalg.norm(self.positions - self.positions[-1], axis=1)


def ode_rhs(obj: Objective, state: Tuple[ArrayLike, ArrayLike], alpha: float) -> Tuple[np.ndarray, np.ndarray]:
    """(v, -alpha v - grad f(x))."""
    x, v = (np.asarray(s, dtype=float) for s in state)
    if x.shape != v.shape:
        raise DimensionError(f'x has shape {x.shape} but v has shape {v.shape}')
    return v.copy(), -alpha * v - obj.grad(x)


def max_stable_step(L: float, alpha: float) -> float:
    """Largest step accepted by the integrator, 0.1 / sqrt(L + alpha^2)."""
    return STABILITY_FACTOR / math.sqrt(L + alpha * alpha)


def default_horizon(obj: Objective, alpha: float) -> float:
    """40 / m(alpha, mu) with the objective's local mu."""
    return DEFAULT_HORIZON_DECAYS / m_continuous(alpha, obj.mu_local)


def integrate_ode(obj: Objective,
                  x0: ArrayLike,
                  v0: Optional[ArrayLike],
                  alpha: float,
                  h: float = 1e-3,
                  T: Optional[float] = None,
                  L: Optional[float] = None,
                  blow_up_bound: float = 1e8) -> FlowTrajectory:
    """Integrate the heavy ball ODE with classical fourth-order Runge-Kutta.

    Args:
        obj: Objective
        x0: Initial position
        v0: Initial velocity, defaults to 0
        alpha: Friction
        h: Fixed step
        T: Horizon, defaults to 40 / m(alpha, mu_local)
        L: Smoothness constant of the Lyapunov energy and the step guard, defaults to ``obj.L_local``
        blow_up_bound: Divergence threshold on |x_t|

    Returns:
        FlowTrajectory on the grid t_k = k h, k = 0..ceil(T / h)

    Raises:
        PreconditionError: If h <= 0, T < h, alpha <= 0 or h > 0.1 / sqrt(L + alpha^2)
    """
    if not alpha > 0:
        raise PreconditionError(f'friction alpha={alpha} must be positive')
    L = obj.L_local if L is None else L
    if not h > 0:
        raise PreconditionError(f'step h={h} must be positive')
    if h > max_stable_step(L, alpha):
        raise PreconditionError(f'step h={h} exceeds the stability guard {max_stable_step(L, alpha):.6g} '
                                f'for L={L}, alpha={alpha}')
    T = default_horizon(obj, alpha) if T is None else T
    if T < h:
        raise PreconditionError(f'horizon T={T} is shorter than the step h={h}')

    x = np.array(x0, dtype=float)
    v = np.zeros_like(x) if v0 is None else np.array(v0, dtype=float)
    if x.shape != (obj.dim, ) or v.shape != (obj.dim, ):
        raise DimensionError(f'initial state must have dimension {obj.dim}')

    n_steps = int(math.ceil(T / h - 1e-9))
    d = obj.dim
    states = np.empty((n_steps + 1, 2 * d))
    gaps = np.empty(n_steps + 1)
    norms = np.empty(n_steps + 1)
    energy = np.empty(n_steps + 1)
    grad = obj.grad
    reason = StopReason.HORIZON
    k = 0
    while True:
        g = grad(x)
        gap = obj.value(x) - obj.min_value
        states[k, :d], states[k, d:] = x, v
        gaps[k] = gap
        norms[k] = np.linalg.norm(g)
        energy[k] = energy_from_oracles(gap, g, v, alpha, L)
        if not (np.all(np.isfinite(states[k])) and np.isfinite(gap)) or np.linalg.norm(x) > blow_up_bound:
            reason = StopReason.DIVERGENCE
            break
        if k == n_steps:
            break
        k1x, k1v = v, -alpha * v - g
        x2, v2 = x + 0.5 * h * k1x, v + 0.5 * h * k1v
        k2x, k2v = v2, -alpha * v2 - grad(x2)
        x3, v3 = x + 0.5 * h * k2x, v + 0.5 * h * k2v
        k3x, k3v = v3, -alpha * v3 - grad(x3)
        x4, v4 = x + h * k3x, v + h * k3v
        k4x, k4v = v4, -alpha * v4 - grad(x4)
        x = x + h / 6 * (k1x + 2 * k2x + 2 * k3x + k4x)
        v = v + h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
        k += 1

    logger.info(f'{obj.kind.value}: ODE run with alpha={alpha:.6g}, h={h:.3g} stopped at t={k * h:.6g} '
                f'({reason.value})')
    return FlowTrajectory(
        times=np.arange(k + 1) * h,
        states=states[:k + 1],
        f_gaps=gaps[:k + 1],
        grad_norms=norms[:k + 1],
        energy=energy[:k + 1],
        stop_reason=reason,
        alpha=alpha,
        step=h,
        L=L,
    )
