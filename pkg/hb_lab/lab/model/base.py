"""Base data models."""

from enum import Enum


class ObjectiveKind(str, Enum):
    """Testbed objective enumeration."""

    QUADRATIC = 'quadratic'
    CIRCLE = 'circle'
    SINE_VALLEY = 'sine_valley'


class Method(str, Enum):
    """Optimization method enumeration."""

    HB_DISCRETE = 'hb_discrete'
    GD = 'gd'
    HB_ODE = 'hb_ode'


class StopReason(str, Enum):
    """Why a run stopped."""

    TOLERANCE = 'tolerance'
    MAX_ITERS = 'max_iters'
    DIVERGENCE = 'divergence'
    HORIZON = 'horizon'


class GridKind(str, Enum):
    """Sampling grid of a decaying series."""
    PER_ITERATION = 'per_iteration'
    PER_UNIT_TIME = 'per_unit_time'


class VerdictStatus(str, Enum):
    """Outcome of a rate check."""

    PASS = 'pass'
    FAIL = 'fail'
    DIVERGENT = 'divergent'
    ERROR = 'error'


class HyperParamSource(str, Enum):
    """Where resolved hyperparameters came from."""
    MANUAL = 'manual'
    ANALYTIC = 'analytic'
    ANCHOR = 'anchor'
    PILOT = 'pilot'
