"""Data models for the heavy ball lab."""

from .base import GridKind, HyperParamSource, Method, ObjectiveKind, StopReason, VerdictStatus
from .config import (
    EstimatorConfig,
    ExperimentConfig,
    HyperParams,
    HyperParamsConfig,
    InitConfig,
    ObjectiveSpec,
    OutputConfig,
    ProbeConfig,
    Region,
    StoppingConfig,
    SweepConfig,
    SweepSpec,
)
from .errors import (
    ConfigError,
    DegenerateInputError,
    DegenerateRegionError,
    DimensionError,
    InsufficientDataError,
    InsufficientDecayError,
    InvalidSpecError,
    LabError,
    NumericalFailureError,
    PreconditionError,
    StabilityRangeError,
)
from .results import (
    ComparisonReport,
    ExperimentReport,
    FdReport,
    GeometryReport,
    NormalSpectrum,
    RateEstimate,
    SpectralReport,
    TailWindow,
    Verdict,
)
