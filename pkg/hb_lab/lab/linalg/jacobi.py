"""Cyclic Jacobi eigensolver for small real symmetric matrices."""

import math
from typing import Tuple

import numpy as np

from ..model import DimensionError, NumericalFailureError

MAX_DIM = 64


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Zero a[p, q] in place by a plane rotation, accumulating it into v."""
    app, aqq, apq = a[p, p], a[q, q], a[p, q]
    phi = 0.5 * math.atan2(2 * apq, aqq - app)
    c, s = math.cos(phi), math.sin(phi)

    ap, aq = a[:, p].copy(), a[:, q].copy()
    a[:, p] = c * ap - s * aq
    a[:, q] = s * ap + c * aq
    ap, aq = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c * ap - s * aq
    a[q, :] = s * ap + c * aq
    # zero by construction
    a[p, q] = a[q, p] = 0.0

    vp, vq = v[:, p].copy(), v[:, q].copy()
    v[:, p] = c * vp - s * vq
    v[:, q] = s * vp + c * vq


def jacobi_eigh(a, tol: float = 1e-12, max_sweeps: int = 100) -> Tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Args:
        a: Real symmetric matrix of size at most 64
        tol: Sweeps stop once the off-diagonal Frobenius norm is below tol * |a|_F
        max_sweeps: Sweep cap

    Returns:
        Eigenvalues in ascending order and the matching orthonormal eigenvectors (columns)

    Raises:
        DimensionError: If the matrix is not square, too large or not symmetric
        NumericalFailureError: If the sweep cap is reached
    """
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f'matrix must be square, got shape {a.shape}')
    n = a.shape[0]
    if n > MAX_DIM:
        raise DimensionError(f'matrix size {n} exceeds {MAX_DIM}')
    scale = np.linalg.norm(a)
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * max(scale, 1.0)):
        raise DimensionError('matrix must be symmetric')
    a = 0.5 * (a + a.T)
    v = np.eye(n)

    for _ in range(max_sweeps):
        off = math.sqrt(max(np.sum(a * a) - np.sum(np.diag(a)**2), 0.0))
        if off <= tol * scale:
            break
        for p in range(n):
            for q in range(p + 1, n):
                if a[p, q] != 0.0:
                    _rotate(a, v, p, q)
    else:
        raise NumericalFailureError(f'Jacobi iteration did not converge in {max_sweeps} sweeps')

    eigs = np.diag(a).copy()
    order = np.argsort(eigs, kind='stable')
    return eigs[order], v[:, order]
