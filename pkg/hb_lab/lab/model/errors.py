"""Exception hierarchy of the lab."""

from typing import Optional


class LabError(Exception):
    """Base class of every error raised by hb_lab."""


class DimensionError(LabError, ValueError):
    """A point or matrix has the wrong shape."""


class InvalidSpecError(LabError, ValueError):
    """An objective specification violates its invariants."""


class DegenerateInputError(LabError, ValueError):
    """The input has no unique answer, e.g. projecting the circle's center."""


class StabilityRangeError(LabError, ValueError):
    """Step size outside (0, 2(1+beta)/L)."""


class PreconditionError(LabError, ValueError):
    """An operation was called outside its documented precondition."""


class InsufficientDecayError(LabError, ValueError):
    """No part of the series lies inside the fitting band."""


class InsufficientDataError(LabError, ValueError):
    """The fitting window holds too few points."""


class DegenerateRegionError(LabError, ValueError):
    """Every sample of a probe region was skipped."""


class NumericalFailureError(LabError, RuntimeError):
    """An iterative numerical routine did not converge."""


class ConfigError(LabError, ValueError):
    """Invalid experiment configuration, anchored to a line of the config text."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        self.message = message
        super().__init__(f'line {line}: {message}' if line is not None else message)
