"""Result data models."""

from typing import Any, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .base import GridKind, Method, StopReason, VerdictStatus
from .config import ExperimentConfig, Region


class TailWindow(BaseModel):
    """Inclusive index range of a series used for fitting."""

    lo: int = Field(..., description='First index')
    hi: int = Field(..., description='Last index (inclusive)')

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1


class RateEstimate(BaseModel):
    """Fitted asymptotic decay rate."""

    rate: float = Field(..., description='Per-iteration factor, or exponent per unit time')
    grid_kind: GridKind = Field(..., description='Grid the series was sampled on')
    prefactor_degree: int = Field(default=0, description='Degree p of the (n+1)^p prefactor')
    r_squared: float = Field(..., description='Goodness of fit of the log series')
    window: TailWindow = Field(..., description='Indices used by the fit')
    step: Optional[float] = Field(None, description='Time step of a per-unit-time grid')
    intercept: float = Field(default=0.0, description='Fitted log constant')


class Verdict(BaseModel):
    """Comparison of a fitted rate with theory."""

    status: VerdictStatus = Field(..., description='Outcome')
    details: str = Field(default='', description='Diagnostics')

    @property
    def passed(self) -> bool:
        return self.status == VerdictStatus.PASS


class FdReport(BaseModel):
    """Finite-difference validation of the derivative oracles."""

    max_rel_error_grad: float = Field(..., description='Worst gradient error')
    max_rel_error_hess: float = Field(..., description='Worst Hessian error')


class SpectralReport(BaseModel):
    """Eigenvalues of a system matrix next to the closed-form theory."""

    kind: Literal['discrete', 'continuous'] = Field(..., description='Iteration or flow matrix')
    eigenvalues: List[Tuple[float, float]] = Field(..., description='(re, im) pairs from the generic solver')
    rho: Optional[float] = Field(None, description='Spectral radius (discrete)')
    abscissa: Optional[float] = Field(None, description='Spectral abscissa (continuous)')
    closed_form: float = Field(..., description='Radius or abscissa predicted from the block formulas')
    theory_rate: Optional[float] = Field(None, description='m(gamma, beta) or m(alpha)')
    max_abs_discrepancy: float = Field(..., description='|generic - closed form|')

    @property
    def as_complex(self) -> List[complex]:
        return [complex(re, im) for re, im in self.eigenvalues]


class NormalSpectrum(BaseModel):
    """Hessian spectrum at a minimizer split into normal and kernel parts."""

    nonzero_eigs: List[float] = Field(..., description='Nonzero eigenvalues, ascending')
    kernel_dim: int = Field(..., description='Number of eigenvalues below the kernel threshold')

    @property
    def mu(self) -> float:
        return self.nonzero_eigs[0]

    @property
    def L(self) -> float:
        return self.nonzero_eigs[-1]


class GeometryReport(BaseModel):
    """Estimated PL / QG / EB / QSC constants on a region."""

    pl_const: float = Field(..., description='Polyak-Lojasiewicz constant')
    qg_const: float = Field(..., description='Quadratic growth constant')
    eb_const: float = Field(..., description='Error bound constant')
    qsc_const: float = Field(..., description='Quasi-strong convexity constant')
    hess_nonzero_eigs: List[float] = Field(..., description='Nonzero Hessian eigenvalues at the anchor')
    kernel_dim: int = Field(..., description='Hessian kernel dimension at the anchor')
    region: Region = Field(..., description='Sampled region')
    samples: int = Field(..., description='Number of samples drawn')
    seed: int = Field(..., description='Sampling seed')


class ExperimentReport(BaseModel):
    """Outcome of one experiment."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    config: ExperimentConfig = Field(..., description='Fully resolved configuration')
    method: Method = Field(..., description='Method that ran')
    stop_reason: Optional[StopReason] = Field(None, description='Why the run stopped')
    steps: int = Field(default=0, description='Iterations or integration steps taken')
    mu: Optional[float] = Field(None, description='Effective smallest nonzero curvature used by the theory')
    L: Optional[float] = Field(None, description='Effective largest curvature used by the theory')
    theory_rate: Optional[float] = Field(None, description='Predicted distance rate')
    estimate: Optional[RateEstimate] = Field(None, description='Fit of the distance-to-final series')
    fgap_estimate: Optional[RateEstimate] = Field(None, description='Fit of the function-gap series')
    fgap_distance_rate: Optional[float] = Field(None, description='f-gap fit converted to a distance rate')
    verdict: Verdict = Field(..., description='Acceptance outcome')
    final_point: List[float] = Field(default_factory=list, description='Last iterate or state')
    final_grad_norm: Optional[float] = Field(None, description='Gradient norm at the last iterate')
    kernel_dim: Optional[int] = Field(None, description='Hessian kernel dimension at the last iterate')
    files: List[str] = Field(default_factory=list, description='Files written')
    trajectory: Optional[Any] = Field(None, exclude=True, description='Trajectory or FlowTrajectory')


class ComparisonReport(BaseModel):
    """Heavy ball against gradient descent on the same objective and start."""

    hb: ExperimentReport = Field(..., description='Heavy ball run')
    gd: ExperimentReport = Field(..., description='Gradient-descent run')
    accelerates: bool = Field(..., description='Fitted heavy ball rate below the fitted gradient-descent rate')
