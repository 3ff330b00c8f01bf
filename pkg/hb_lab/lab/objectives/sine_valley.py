"""Curved valley f(x) = 1/2 mu_t (x1 - sin x3)^2 + 1/2 L_t x2^2 in R^3.

The minimizer set is the curve {(sin t, 0, t)}; the nonzero Hessian eigenvalues on it
are mu_t (1 + cos^2 x3) and L_t.
"""

import numpy as np

from ..model import ObjectiveKind, ObjectiveSpec
from .base import Objective, register_objective


@register_objective(ObjectiveKind.SINE_VALLEY)
class SineValleyObjective(Objective):
    """Non-convex objective with a curved one-dimensional minimizer manifold."""

    grid_half_width = 2.0
    grid_spacing = 0.01
    refine_steps = 20
    batch_size = 1024

    def __init__(self, spec: ObjectiveSpec):
        super().__init__(spec)
        self.mu_t = float(spec.mu_t)
        self.L_t = float(spec.L_t)
        n = int(round(2 * self.grid_half_width / self.grid_spacing)) + 1
        self._offsets = np.linspace(-self.grid_half_width, self.grid_half_width, n)

    @property
    def kind(self) -> ObjectiveKind:
        return ObjectiveKind.SINE_VALLEY

    @property
    def mu_local(self) -> float:
        return self.mu_t

    @property
    def L_local(self) -> float:
        return max(self.L_t, 2.0 * self.mu_t)

    @property
    def manifold_dim(self) -> int:
        return 1

    def _value(self, x: np.ndarray) -> np.ndarray:
        u = x[..., 0] - np.sin(x[..., 2])
        return 0.5 * self.mu_t * u * u + 0.5 * self.L_t * x[..., 1] * x[..., 1]

    def _grad(self, x: np.ndarray) -> np.ndarray:
        u = x[..., 0] - np.sin(x[..., 2])
        return np.stack([self.mu_t * u, self.L_t * x[..., 1], -self.mu_t * u * np.cos(x[..., 2])], axis=-1)

    def _hess(self, x: np.ndarray) -> np.ndarray:
        c, s = np.cos(x[2]), np.sin(x[2])
        u = x[0] - s
        mu = self.mu_t
        return np.array([
            [mu, 0.0, -mu * c],
            [0.0, self.L_t, 0.0],
            [-mu * c, 0.0, mu * c * c + mu * u * s],
        ])

    def _project(self, x: np.ndarray) -> np.ndarray:
        if x.ndim == 1:
            return self._project_batch(x[None, :])[0]
        out = np.empty_like(x)
        for start in range(0, x.shape[0], self.batch_size):
            out[start:start + self.batch_size] = self._project_batch(x[start:start + self.batch_size])
        return out

    def _project_batch(self, x: np.ndarray) -> np.ndarray:
        """Grid search over the curve parameter, then ternary refinement."""
        x1, x2, x3 = x[:, 0:1], x[:, 1], x[:, 2:3]

        def dist2(t):
            return (x1 - np.sin(t))**2 + (x3 - t)**2

        grid = x3 + self._offsets[None, :]
        best = grid[np.arange(x.shape[0]), np.argmin(dist2(grid), axis=1)][:, None]
        lo, hi = best - self.grid_spacing, best + self.grid_spacing
        for _ in range(self.refine_steps):
            m1 = lo + (hi - lo) / 3
            m2 = hi - (hi - lo) / 3
            left = dist2(m1) < dist2(m2)
            hi = np.where(left, m2, hi)
            lo = np.where(left, lo, m1)
        t = 0.5 * (lo + hi)[:, 0]
        return np.stack([np.sin(t), np.zeros_like(x2), t], axis=-1)
