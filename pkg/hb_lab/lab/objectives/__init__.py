"""Testbed objectives."""

from .base import Objective, ObjectiveFactory, register_objective
from .circle import CircleObjective
from .oracles import evaluate, fd_check, gradient, hessian, make_objective, project_to_min_set
from .quadratic import QuadraticObjective, rotation_matrix
from .sine_valley import SineValleyObjective

__all__ = [
    'Objective',
    'ObjectiveFactory',
    'register_objective',
    'QuadraticObjective',
    'CircleObjective',
    'SineValleyObjective',
    'rotation_matrix',
    'make_objective',
    'evaluate',
    'gradient',
    'hessian',
    'project_to_min_set',
    'fd_check',
]
