"""Discrete heavy ball iteration and its gradient-descent special case."""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ...utils import get_logger
from ..model import DimensionError, HyperParams, StopReason, StoppingConfig
from ..objectives import Objective
from ..objectives.base import ArrayLike

logger = get_logger()


@dataclass
class Trajectory:
    """Iterates x_0..x_N with their function gaps and gradient norms."""

    iterates: np.ndarray
    f_gaps: np.ndarray
    grad_norms: np.ndarray
    stop_reason: StopReason
    params: HyperParams
    tolerance_step: Optional[int] = None
    notes: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.f_gaps)

    @property
    def steps(self) -> int:
        return len(self.f_gaps) - 1

    @property
    def final(self) -> np.ndarray:
        return self.iterates[-1]

    @property
    def dist_to_final(self) -> np.ndarray:
        """Distances |x_n - x_N| to the last iterate, the stand-in for the limit point."""
        return np.linalg.norm(self.iterates - self.iterates[-1], axis=1)


def momentum_step(x: np.ndarray, g: np.ndarray, x_prev: np.ndarray, gamma: float, beta: float) -> np.ndarray:
    """x - gamma g + beta (x - x_prev). Shared by heavy ball and gradient descent."""
    return x - gamma * g + beta * (x - x_prev)


def hb_step(obj: Objective, x_n: ArrayLike, x_prev: ArrayLike, params: HyperParams) -> np.ndarray:
    """One heavy ball step x_n - gamma grad f(x_n) + beta (x_n - x_prev)."""
    x_n = np.asarray(x_n, dtype=float)
    x_prev = np.asarray(x_prev, dtype=float)
    if x_n.shape != x_prev.shape:
        raise DimensionError(f'x_n has shape {x_n.shape} but x_prev has shape {x_prev.shape}')
    return momentum_step(x_n, obj.grad(x_n), x_prev, params.gamma, params.beta)


def run_discrete(obj: Objective,
                 x0: ArrayLike,
                 x1: Optional[ArrayLike],
                 params: HyperParams,
                 stopping: Optional[StoppingConfig] = None) -> Trajectory:
    """Iterate the heavy ball method from (x0, x1).

    The run stops once the function gap drops below ``f_tol``, after ``max_iters`` steps,
    or when |x_n| exceeds ``blow_up_bound`` or a value turns non-finite (divergence).
    With ``settle`` enabled the iteration continues past ``f_tol`` until the step length is
    at roundoff level, so the final iterate approximates the limit point to working
    precision; the stop reason stays ``tolerance``.

    ``max_iters`` caps the last index N of x_0..x_N. Since x_1 is given rather than computed,
    a run that hits the cap performs ``max_iters - 1`` heavy ball updates.

    Args:
        obj: Objective
        x0: Initial point
        x1: Second initial point, defaults to x0 (zero initial momentum)
        params: Step size and momentum
        stopping: Stopping rules, defaults to ``StoppingConfig()``

    Returns:
        Trajectory with every iterate recorded
    """
    stopping = stopping or StoppingConfig()
    gamma, beta = params.gamma, params.beta
    x_prev = np.array(x0, dtype=float)
    x = np.array(x0 if x1 is None else x1, dtype=float)
    if x_prev.shape != (obj.dim, ) or x.shape != (obj.dim, ):
        raise DimensionError(f'initial points must have dimension {obj.dim}')

    iterates, gaps, norms = [], [], []

    def record(point: np.ndarray) -> np.ndarray:
        g = obj.grad(point)
        iterates.append(point)
        gaps.append(obj.value(point) - obj.min_value)
        norms.append(float(np.linalg.norm(g)))
        return g

    record(x_prev)
    g = record(x)
    reason: Optional[StopReason] = None
    tolerance_step = None
    n = 1
    while True:
        norm_x = float(np.linalg.norm(x))
        if not (np.isfinite(gaps[-1]) and np.isfinite(norms[-1])) or not norm_x <= stopping.blow_up_bound:
            reason = StopReason.DIVERGENCE
            break
        if tolerance_step is None and gaps[-1] < stopping.f_tol:
            tolerance_step = n
            reason = StopReason.TOLERANCE
            if not stopping.settle:
                break
        if tolerance_step is not None and np.linalg.norm(x - x_prev) <= stopping.step_floor * (1 + norm_x):
            break
        if n >= stopping.max_iters:
            reason = reason or StopReason.MAX_ITERS
            break
        x_prev, x = x, momentum_step(x, g, x_prev, gamma, beta)
        g = record(x)
        n += 1

    logger.info(f'{obj.kind.value}: discrete run with gamma={gamma:.6g}, beta={beta:.6g} '
                f'stopped after {n} steps ({reason.value})')
    return Trajectory(
        iterates=np.array(iterates),
        f_gaps=np.array(gaps),
        grad_norms=np.array(norms),
        stop_reason=reason,
        params=params,
        tolerance_step=tolerance_step,
    )


def run_gradient_descent(obj: Objective,
                         x0: ArrayLike,
                         gamma: float,
                         stopping: Optional[StoppingConfig] = None) -> Trajectory:
    """Gradient descent through the heavy ball step routine with beta = 0.

    The first step is taken here so that the recorded sequence starts x0, x0 - gamma grad f(x0).
    """
    params = HyperParams(gamma=gamma, beta=0.0)
    x0 = np.asarray(x0, dtype=float)
    x1 = momentum_step(x0, obj.grad(x0), x0, gamma, 0.0)
    return run_discrete(obj, x0, x1, params, stopping)
