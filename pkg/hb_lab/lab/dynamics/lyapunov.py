"""Lyapunov energy of the heavy ball ODE and a PL check along trajectories."""

from typing import Optional, Union

import numpy as np

from ..model import InvalidSpecError, Region
from ..objectives import Objective
from ..objectives.base import ArrayLike


def lyapunov_energy(obj: Objective, x: ArrayLike, v: ArrayLike, alpha: float, L: float) -> float:
    """E(x, v) = f(x) - f* + alpha/(alpha^2 + 2L) <grad f(x), v> + L/(alpha^2 + 2L) |v|^2."""
    if not (alpha > 0 and L > 0):
        raise InvalidSpecError(f'need alpha > 0 and L > 0, got alpha={alpha}, L={L}')
    v = np.asarray(v, dtype=float)
    denom = alpha * alpha + 2 * L
    return float(obj.value(x) - obj.min_value + alpha / denom * np.dot(obj.grad(x), v) + L / denom * np.dot(v, v))


def energy_from_oracles(gap: float, g: np.ndarray, v: np.ndarray, alpha: float, L: float) -> float:
    denom = alpha * alpha + 2 * L
    return float(gap + alpha / denom * np.dot(g, v) + L / denom * np.dot(v, v))


def pl_consistency(traj, obj: Objective, mu_loc: float, region: Optional[Region] = None) -> float:
    """Worst violation of |grad f|^2 >= 2 mu_loc (f - f*) along a trajectory.

    Only points inside ``region`` are checked (all points when omitted). Returns
    max(0, max_n 2 mu_loc gap_n - |grad f(x_n)|^2).

    Args:
        traj: ``Trajectory`` or ``FlowTrajectory``
        obj: Objective the trajectory ran on
        mu_loc: PL constant to check
        region: Probe region
    """
    points = traj.positions if hasattr(traj, 'positions') else traj.iterates
    mask: Union[np.ndarray, bool] = True
    if region is not None:
        r = np.linalg.norm(points - np.asarray(region.center), axis=1)
        mask = (r >= region.inner) & (r <= region.outer)
    excess = np.where(mask, 2 * mu_loc * traj.f_gaps - traj.grad_norms**2, -np.inf)
    return float(max(0.0, np.max(excess))) if len(excess) else 0.0
