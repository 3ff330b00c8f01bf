"""Free-function access to the objective oracles and derivative validation."""

from typing import Dict, Optional, Union

import numpy as np

from ..model import FdReport, ObjectiveSpec
from .base import ArrayLike, Objective, ObjectiveFactory

GRAD_STEP = 1e-5
HESS_STEP = 1e-4


def make_objective(spec: Union[ObjectiveSpec, Dict]) -> Objective:
    """Build a testbed objective from its specification.

    Args:
        spec: Objective specification

    Returns:
        Objective with value, gradient, Hessian and projection oracles

    Raises:
        InvalidSpecError: If the specification violates its invariants
    """
    return ObjectiveFactory.create_objective(spec)


def evaluate(obj: Objective, x: ArrayLike) -> float:
    return obj.value(x)


def gradient(obj: Objective, x: ArrayLike) -> np.ndarray:
    return obj.grad(x)


def hessian(obj: Objective, x: ArrayLike) -> np.ndarray:
    return obj.hess(x)


def project_to_min_set(obj: Objective, x: ArrayLike) -> np.ndarray:
    return obj.project(x)


def fd_gradient(obj: Objective, x: np.ndarray, h: float) -> np.ndarray:
    g = np.empty(obj.dim)
    for i in range(obj.dim):
        e = np.zeros(obj.dim)
        e[i] = h
        g[i] = (obj.value(x + e) - obj.value(x - e)) / (2 * h)
    return g


def fd_hessian(obj: Objective, x: np.ndarray, h: float) -> np.ndarray:
    """Central differences of the analytic gradient, column by column."""
    cols = []
    for i in range(obj.dim):
        e = np.zeros(obj.dim)
        e[i] = h
        cols.append((obj.grad(x + e) - obj.grad(x - e)) / (2 * h))
    return np.stack(cols, axis=1)


def fd_check(obj: Objective, x: ArrayLike, h: Optional[float] = None) -> FdReport:
    """Compare the analytic oracles with central differences.

    Errors are max-abs differences relative to max(|analytic|_inf, 1).

    Args:
        obj: Objective to validate
        x: Point of evaluation
        h: Step for both checks; defaults to 1e-5 (gradient) and 1e-4 (Hessian)

    Returns:
        Worst relative errors of gradient and Hessian
    """
    if h is not None and not h > 0:
        raise ValueError(f'finite-difference step must be positive, got {h}')
    x = np.asarray(x, dtype=float)
    g = obj.grad(x)
    H = obj.hess(x)
    g_fd = fd_gradient(obj, x, h or GRAD_STEP)
    H_fd = fd_hessian(obj, x, h or HESS_STEP)
    err_g = np.max(np.abs(g_fd - g)) / max(np.max(np.abs(g)), 1.0)
    err_h = np.max(np.abs(H_fd - H)) / max(np.max(np.abs(H)), 1.0)
    return FdReport(max_rel_error_grad=float(err_g), max_rel_error_hess=float(err_h))
