"""System matrices of the linearized heavy ball dynamics and their 2x2 block eigenvalues.

Coordinates are split into a normal part (where the Hessian block ``H`` acts) and a
tangential part of dimension ``d_T`` (the Hessian kernel along the minimizer set).
"""

import cmath
import math
from typing import Tuple

import numpy as np

from ..model import DimensionError, InvalidSpecError


def _check_hessian(H) -> np.ndarray:
    H = np.atleast_2d(np.asarray(H, dtype=float))
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise DimensionError(f'H must be square, got shape {H.shape}')
    scale = max(float(np.max(np.abs(H))), 1.0) if H.size else 1.0
    if not np.allclose(H, H.T, rtol=0.0, atol=1e-12 * scale):
        raise DimensionError('H must be symmetric')
    return H


def _check_d_t(d_t: int) -> int:
    if int(d_t) != d_t or d_t < 0:
        raise DimensionError(f'd_T must be a non-negative integer, got {d_t}')
    return int(d_t)


def continuous_system_matrix(H, d_t: int, alpha: float) -> np.ndarray:
    """Matrix of the linearized ODE in (x_N, v_T, v_N) coordinates.

    Block rows are [0, 0, I], [0, -alpha I, 0], [-H, 0, -alpha I].
    """
    H = _check_hessian(H)
    d_t = _check_d_t(d_t)
    if not alpha > 0:
        raise InvalidSpecError(f'friction alpha={alpha} must be positive')
    d_n = H.shape[0]
    n = 2 * d_n + d_t
    a = np.zeros((n, n))
    xn, vt, vn = slice(0, d_n), slice(d_n, d_n + d_t), slice(d_n + d_t, n)
    a[xn, vn] = np.eye(d_n)
    a[vt, vt] = -alpha * np.eye(d_t)
    a[vn, xn] = -H
    a[vn, vn] = -alpha * np.eye(d_n)
    return a


def discrete_system_matrix(H, d_t: int, gamma: float, beta: float) -> np.ndarray:
    """Matrix of the linearized iteration acting on (x_n, x_{n-1}, tangential momentum).

    Block rows are [(1+beta) I - gamma H, -beta I, 0], [I, 0, 0], [0, 0, beta I].
    """
    H = _check_hessian(H)
    d_t = _check_d_t(d_t)
    if not gamma > 0 or not 0 <= beta < 1:
        raise InvalidSpecError(f'invalid hyperparameters gamma={gamma}, beta={beta}')
    d_n = H.shape[0]
    n = 2 * d_n + d_t
    a = np.zeros((n, n))
    cur, prev, tan = slice(0, d_n), slice(d_n, 2 * d_n), slice(2 * d_n, n)
    a[cur, cur] = (1 + beta) * np.eye(d_n) - gamma * H
    a[cur, prev] = -beta * np.eye(d_n)
    a[prev, cur] = np.eye(d_n)
    a[tan, tan] = beta * np.eye(d_t)
    return a


def _quadratic_roots(half_trace: float, disc: float) -> Tuple[complex, complex]:
    """Roots half_trace +- sqrt(disc); complex pair when disc < 0."""
    if disc >= 0:
        r = math.sqrt(disc)
        return complex(half_trace + r), complex(half_trace - r)
    r = cmath.sqrt(disc)
    return half_trace + r, half_trace - r


def block_eigenvalues_continuous(lam: float, alpha: float) -> Tuple[complex, complex]:
    """Eigenvalues -1/2 (alpha -+ sqrt(alpha^2 - 4 lam)) of [[0, 1], [-lam, -alpha]]."""
    return _quadratic_roots(-0.5 * alpha, 0.25 * alpha * alpha - lam)


def block_eigenvalues_discrete(lam: float, gamma: float, beta: float) -> Tuple[complex, complex]:
    """Eigenvalues of [[1 + beta - gamma lam, -beta], [1, 0]].

    Both have modulus sqrt(beta) when the discriminant is not positive.
    """
    half = 0.5 * (1 + beta - gamma * lam)
    return _quadratic_roots(half, half * half - beta)
