"""Base objective interface and factory."""

import abc
from typing import Dict, List, Optional, Tuple, Type, Union

import numpy as np
from pydantic import ValidationError

from ..model import DimensionError, InvalidSpecError, ObjectiveKind, ObjectiveSpec

ArrayLike = Union[np.ndarray, List[float], Tuple[float, ...]]


class Objective(abc.ABC):
    """Smooth test function with exact derivative oracles and a known minimizer set.

    ``value``, ``grad`` and ``project`` accept a single point of shape (d,) or a
    batch of shape (n, d); ``hess`` is single-point only. Every oracle is pure.
    """

    min_value: float = 0.0

    def __init__(self, spec: ObjectiveSpec):
        self.spec = spec
        self.dim: int = spec.dim

    @property
    @abc.abstractmethod
    def kind(self) -> ObjectiveKind:
        """Return the testbed member identifier."""
        pass

    @property
    @abc.abstractmethod
    def mu_local(self) -> float:
        """Smallest nonzero Hessian eigenvalue on the minimizer set (lower bound)."""
        pass

    @property
    @abc.abstractmethod
    def L_local(self) -> float:
        """Largest Hessian eigenvalue on the minimizer set (upper bound)."""
        pass

    @property
    @abc.abstractmethod
    def manifold_dim(self) -> int:
        """Dimension of the minimizer set."""
        pass

    @property
    def analytic_constants(self) -> Optional[Tuple[float, float]]:
        """(mu, L) valid at every minimizer, or None when they depend on the limit point."""
        return None

    def value(self, x: ArrayLike) -> Union[float, np.ndarray]:
        x = self._check(x)
        out = self._value(x)
        return float(out) if x.ndim == 1 else out

    def grad(self, x: ArrayLike) -> np.ndarray:
        return self._grad(self._check(x))

    def hess(self, x: ArrayLike) -> np.ndarray:
        return self._hess(self._check(x, allow_batch=False))

    def project(self, x: ArrayLike) -> np.ndarray:
        """Nearest point(s) of the minimizer set."""
        return self._project(self._check(x))

    def distance_to_min_set(self, x: ArrayLike) -> Union[float, np.ndarray]:
        x = self._check(x)
        d = np.linalg.norm(x - self._project(x), axis=-1)
        return float(d) if x.ndim == 1 else d

    @abc.abstractmethod
    def _value(self, x: np.ndarray) -> np.ndarray:
        pass

    @abc.abstractmethod
    def _grad(self, x: np.ndarray) -> np.ndarray:
        pass

    @abc.abstractmethod
    def _hess(self, x: np.ndarray) -> np.ndarray:
        pass

    @abc.abstractmethod
    def _project(self, x: np.ndarray) -> np.ndarray:
        pass

    def _check(self, x: ArrayLike, allow_batch: bool = True) -> np.ndarray:
        arr = np.asarray(x, dtype=float)
        ndims = (1, 2) if allow_batch else (1, )
        if arr.ndim not in ndims or arr.shape[-1] != self.dim:
            raise DimensionError(f'expected a point of dimension {self.dim}, got shape {arr.shape}')
        return arr

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}({self.spec.model_dump(exclude_none=True)})'


class ObjectiveFactory:
    """Factory for creating objective instances."""

    _objectives: Dict[ObjectiveKind, Type[Objective]] = {}

    @classmethod
    def register_objective(cls, kind: ObjectiveKind, objective_class: Type[Objective]):
        cls._objectives[kind] = objective_class

    @classmethod
    def create_objective(cls, spec: Union[ObjectiveSpec, Dict]) -> Objective:
        """Create an objective from its specification.

        Args:
            spec: Objective specification or a dict of its fields

        Returns:
            Objective instance

        Raises:
            InvalidSpecError: If the spec is invalid or its kind is not registered
        """
        if isinstance(spec, dict):
            try:
                spec = ObjectiveSpec(**spec)
            except ValidationError as e:
                raise InvalidSpecError(f'invalid objective: {e.errors()[0].get("msg", str(e))}') from e
        if spec.kind not in cls._objectives:
            raise InvalidSpecError(f'Objective kind {spec.kind} is not registered')
        return cls._objectives[spec.kind](spec)

    @classmethod
    def get_available_kinds(cls) -> List[ObjectiveKind]:
        return list(cls._objectives.keys())


def register_objective(kind: ObjectiveKind):
    """Decorator for registering objectives.

    Args:
        kind: Objective kind identifier
    """

    def decorator(objective_class: Type[Objective]):
        ObjectiveFactory.register_objective(kind, objective_class)
        return objective_class

    return decorator
