"""Rotated quadratic f(x) = 1/2 x^T Q diag(lambda) Q^T x."""

from typing import Optional, Tuple

import numpy as np

from ..model import ObjectiveKind, ObjectiveSpec
from .base import Objective, register_objective


def rotation_matrix(dim: int, seed: Optional[int]) -> np.ndarray:
    """Haar-distributed orthogonal matrix from a seed; identity when the seed is None."""
    if seed is None:
        return np.eye(dim)
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


@register_objective(ObjectiveKind.QUADRATIC)
class QuadraticObjective(Objective):
    """Strongly convex reference with a fully controlled spectrum and minimizer 0."""

    def __init__(self, spec: ObjectiveSpec):
        super().__init__(spec)
        self.eigenvalues = np.asarray(spec.eigenvalues, dtype=float)
        self.rotation = rotation_matrix(self.dim, spec.rotation_seed)
        h = (self.rotation * self.eigenvalues) @ self.rotation.T
        # exact symmetry
        self.matrix = 0.5 * (h + h.T)

    @property
    def kind(self) -> ObjectiveKind:
        return ObjectiveKind.QUADRATIC

    @property
    def mu_local(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def L_local(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def manifold_dim(self) -> int:
        return 0

    @property
    def analytic_constants(self) -> Tuple[float, float]:
        return self.mu_local, self.L_local

    def rotate(self, x) -> np.ndarray:
        """Map coordinates of the unrotated problem into this one."""
        return np.asarray(x, dtype=float) @ self.rotation.T

    def _value(self, x: np.ndarray) -> np.ndarray:
        return 0.5 * np.sum(x * (x @ self.matrix), axis=-1)

    def _grad(self, x: np.ndarray) -> np.ndarray:
        return x @ self.matrix

    def _hess(self, x: np.ndarray) -> np.ndarray:
        return self.matrix.copy()

    def _project(self, x: np.ndarray) -> np.ndarray:
        return np.zeros_like(x)
