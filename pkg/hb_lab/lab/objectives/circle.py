"""Circle quartic f(x) = 1/4 (|x|^2 - 1)^2, minimized on the unit sphere."""

from typing import Tuple

import numpy as np

from ..model import DegenerateInputError, ObjectiveKind
from .base import Objective, register_objective


@register_objective(ObjectiveKind.CIRCLE)
class CircleObjective(Objective):
    """Non-convex, minimizer set of dimension dim - 1, normal curvature 2."""

    @property
    def kind(self) -> ObjectiveKind:
        return ObjectiveKind.CIRCLE

    @property
    def mu_local(self) -> float:
        return 2.0

    @property
    def L_local(self) -> float:
        return 2.0

    @property
    def manifold_dim(self) -> int:
        return self.dim - 1

    @property
    def analytic_constants(self) -> Tuple[float, float]:
        return 2.0, 2.0

    def _value(self, x: np.ndarray) -> np.ndarray:
        s = np.sum(x * x, axis=-1)
        return 0.25 * (s - 1.0)**2

    def _grad(self, x: np.ndarray) -> np.ndarray:
        s = np.sum(x * x, axis=-1)
        return (s - 1.0)[..., None] * x

    def _hess(self, x: np.ndarray) -> np.ndarray:
        s = float(x @ x)
        return (s - 1.0) * np.eye(self.dim) + 2.0 * np.outer(x, x)

    def _project(self, x: np.ndarray) -> np.ndarray:
        norms = np.linalg.norm(x, axis=-1)
        if np.any(norms == 0):
            raise DegenerateInputError('projection onto the circle is not unique at the origin')
        return x / norms[..., None]
