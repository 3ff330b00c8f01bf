"""Configuration data models."""

import math
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .base import HyperParamSource, Method, ObjectiveKind
from .errors import ConfigError

UINT64_MAX = 2**64 - 1


class ObjectiveSpec(BaseModel):
    """Testbed objective specification."""

    model_config = ConfigDict(extra='forbid')

    kind: ObjectiveKind = Field(..., description='Testbed member')
    dim: Optional[int] = Field(None, description='Ambient dimension (inferred when omitted)')
    eigenvalues: Optional[List[float]] = Field(None, description='Quadratic spectrum, ascending')
    rotation_seed: Optional[int] = Field(None, description='Seed of the quadratic eigenbasis rotation')
    mu_t: Optional[float] = Field(None, description='sine_valley curvature across the valley floor')
    L_t: Optional[float] = Field(None, description='sine_valley curvature along the x2 axis')

    @field_validator('rotation_seed')
    def validate_rotation_seed(cls, v):
        if v is not None and not 0 <= v <= UINT64_MAX:
            raise ValueError('rotation_seed must be an unsigned 64-bit integer')
        return v

    @model_validator(mode='after')
    def validate_kind_params(self):
        """Check the kind-specific parameters and fill the dimension."""
        given = {name for name in ('eigenvalues', 'rotation_seed', 'mu_t', 'L_t') if getattr(self, name) is not None}
        allowed = {
            ObjectiveKind.QUADRATIC: {'eigenvalues', 'rotation_seed'},
            ObjectiveKind.CIRCLE: set(),
            ObjectiveKind.SINE_VALLEY: {'mu_t', 'L_t'},
        }[self.kind]
        extra = sorted(given - allowed)
        if extra:
            raise ValueError(f'parameter {extra[0]} does not apply to a {self.kind.value} objective')

        if self.kind == ObjectiveKind.QUADRATIC:
            if not self.eigenvalues:
                raise ValueError('quadratic objective needs eigenvalues')
            if any(not (lam > 0 and math.isfinite(lam)) for lam in self.eigenvalues):
                raise ValueError('quadratic eigenvalues must be strictly positive')
            if any(b < a for a, b in zip(self.eigenvalues, self.eigenvalues[1:])):
                raise ValueError('quadratic eigenvalues must be sorted ascending')
            if self.dim is None:
                self.dim = len(self.eigenvalues)
            elif self.dim != len(self.eigenvalues):
                raise ValueError(f'dim={self.dim} does not match {len(self.eigenvalues)} eigenvalues')
        elif self.kind == ObjectiveKind.CIRCLE:
            if self.dim is None:
                self.dim = 2
            if self.dim < 2:
                raise ValueError('circle objective requires dim >= 2')
        else:
            if self.dim is None:
                self.dim = 3
            if self.dim != 3:
                raise ValueError('sine_valley objective is fixed to dim = 3')
            if self.mu_t is None or self.L_t is None:
                raise ValueError('sine_valley objective needs mu_t and L_t')
            if not 0 < self.mu_t <= self.L_t:
                raise ValueError(f'sine_valley requires 0 < mu_t <= L_t, got mu_t={self.mu_t}, L_t={self.L_t}')

        if self.dim < 1:
            raise ValueError('dim must be a positive integer')
        return self


class HyperParams(BaseModel):
    """Discrete-time heavy ball hyperparameters."""

    gamma: float = Field(..., description='Step size')
    beta: float = Field(default=0.0, description='Momentum; 0 degenerates to gradient descent')

    @field_validator('gamma')
    def validate_gamma(cls, v):
        if not (v > 0 and math.isfinite(v)):
            raise ValueError(f'step size gamma={v} must be positive')
        return v

    @field_validator('beta')
    def validate_beta(cls, v):
        if not 0 <= v < 1:
            raise ValueError(f'momentum beta={v} outside the range (0, 1); beta = 0 selects gradient descent')
        return v

    def stability_bound(self, L: float) -> float:
        """Largest admissible step size 2(1+beta)/L."""
        return 2 * (1 + self.beta) / L


class Region(BaseModel):
    """Ball (inner = 0) or spherical shell around a center point."""

    center: List[float] = Field(..., description='Center point')
    outer: float = Field(..., description='Outer radius')
    inner: float = Field(default=0.0, description='Inner radius, 0 for a ball')

    @model_validator(mode='after')
    def validate_radii(self):
        if not 0 <= self.inner < self.outer:
            raise ValueError(f'region radii must satisfy 0 <= inner < outer, got {self.inner}, {self.outer}')
        return self

    @classmethod
    def ball(cls, center: List[float], radius: float) -> 'Region':
        return cls(center=list(center), outer=radius)

    @classmethod
    def shell(cls, center: List[float], inner: float, outer: float) -> 'Region':
        return cls(center=list(center), inner=inner, outer=outer)

    @property
    def dim(self) -> int:
        return len(self.center)

    def describe(self) -> str:
        center = ' '.join(f'{c:.6g}' for c in self.center)
        if self.inner == 0:
            return f'ball(c=[{center}] r={self.outer:.6g})'
        return f'shell(c=[{center}] r=[{self.inner:.6g} {self.outer:.6g}])'


class HyperParamsConfig(BaseModel):
    """Hyperparameter section of an experiment."""

    model_config = ConfigDict(extra='forbid')

    mode: Literal['auto', 'manual'] = Field(default='auto', description='auto derives optimal values')
    gamma: Optional[float] = Field(None, description='Step size (discrete methods)')
    beta: Optional[float] = Field(None, description='Momentum (hb_discrete)')
    alpha: Optional[float] = Field(None, description='Friction (hb_ode)')
    anchor: Optional[List[float]] = Field(None, description='Point near the minimizer set for auto mode')
    source: HyperParamSource = Field(default=HyperParamSource.MANUAL, description='How the values were resolved')
    mu: Optional[float] = Field(None, description='Effective smallest nonzero curvature')
    L: Optional[float] = Field(None, description='Effective largest curvature')

    @field_validator('beta')
    def validate_beta(cls, v):
        if v is not None and not 0 <= v < 1:
            raise ValueError(f'momentum beta={v} outside the range (0, 1); beta = 0 selects gradient descent')
        return v

    @field_validator('gamma', 'alpha')
    def validate_positive(cls, v):
        if v is not None and not v > 0:
            raise ValueError(f'value {v} must be positive')
        return v

    @model_validator(mode='before')
    @classmethod
    def infer_mode(cls, data):
        """Explicit gamma, beta or alpha without a mode means manual."""
        if isinstance(data, dict) and data.get('mode') is None:
            given = any(data.get(k) is not None for k in ('gamma', 'beta', 'alpha'))
            data = {**data, 'mode': 'manual' if given else 'auto'}
        return data

class InitConfig(BaseModel):
    """Initial condition."""

    model_config = ConfigDict(extra='forbid')

    x0: List[float] = Field(..., description='Initial point')
    x1: Optional[List[float]] = Field(None, description='Second point of the discrete method (defaults to x0)')
    v0: Optional[List[float]] = Field(None, description='Initial velocity of the ODE (defaults to 0)')


class StoppingConfig(BaseModel):
    """Stopping rules."""

    model_config = ConfigDict(extra='forbid')

    f_tol: float = Field(default=1e-14, description='Stop once the function gap drops below this')
    max_iters: int = Field(default=200000, description='Iteration cap of the discrete methods')
    blow_up_bound: float = Field(default=1e8, description='Divergence threshold on the iterate norm')
    settle: bool = Field(default=True, description='Keep iterating after f_tol until steps hit roundoff')
    step_floor: float = Field(default=1e-15, description='Relative step length that ends the settle phase')
    step: float = Field(default=1e-3, description='RK4 step of the ODE integrator')
    horizon: Optional[float] = Field(None, description='ODE horizon (defaults to 40 / m(alpha, mu))')

    @field_validator('f_tol', 'blow_up_bound', 'step_floor', 'step', 'horizon')
    def validate_positive(cls, v):
        if v is not None and not v > 0:
            raise ValueError(f'value {v} must be positive')
        return v

    @field_validator('max_iters')
    def validate_max_iters(cls, v):
        if v < 1:
            raise ValueError('max_iters must be at least 1')
        return v


class EstimatorConfig(BaseModel):
    """Rate-fitting settings."""

    model_config = ConfigDict(extra='forbid')

    window_lo: float = Field(default=1e-11, description='Lower edge of the fitting band')
    window_hi: float = Field(default=1e-4, description='Upper edge of the fitting band')
    allow_prefactor: bool = Field(default=True, description='Fit a polynomial prefactor of degree 0..2')
    eps: float = Field(default=0.02, description='Accepted deviation from the theoretical rate')
    min_r_squared: float = Field(default=0.99, description='Minimum goodness of fit for a pass')

    @model_validator(mode='after')
    def validate_band(self):
        if not 0 < self.window_lo < self.window_hi:
            raise ValueError(f'need 0 < window_lo < window_hi, got {self.window_lo}, {self.window_hi}')
        if not self.eps > 0:
            raise ValueError('eps must be positive')
        return self


class OutputConfig(BaseModel):
    """Where reports go."""

    model_config = ConfigDict(extra='forbid')

    dir: Optional[str] = Field(None, description='Output directory (falls back to HBLAB_OUT)')
    name: str = Field(default='run', description='File name stem')


class ProbeConfig(BaseModel):
    """Geometry probe settings."""

    model_config = ConfigDict(extra='forbid')

    anchor: Optional[List[float]] = Field(None, description='Minimizer to probe around (defaults to projected x0)')
    radii: List[float] = Field(default_factory=lambda: [0.2, 0.1, 0.05], description='Decreasing ball radii')
    n_samples: int = Field(default=100000, description='Samples per region')

    @field_validator('radii')
    def validate_radii(cls, v):
        if not v or any(r <= 0 for r in v):
            raise ValueError('radii must be a nonempty list of positive values')
        if any(b >= a for a, b in zip(v, v[1:])):
            raise ValueError('radii must be strictly decreasing')
        return v

    @field_validator('n_samples')
    def validate_n_samples(cls, v):
        if v < 1000:
            raise ValueError('n_samples must be at least 1000')
        return v


class SweepConfig(BaseModel):
    """Grid of a sweep."""

    model_config = ConfigDict(extra='forbid')

    gamma: List[float] = Field(default_factory=list, description='Step sizes')
    beta: List[float] = Field(default_factory=list, description='Momenta')
    alpha: List[float] = Field(default_factory=list, description='Frictions')
    parallelism: int = Field(default=1, description='Concurrent workers')

    @field_validator('parallelism')
    def validate_parallelism(cls, v):
        if v < 1:
            raise ValueError('parallelism must be at least 1')
        return v


class ExperimentConfig(BaseModel):
    """A single experiment."""

    model_config = ConfigDict(extra='forbid')

    objective: ObjectiveSpec
    method: Method = Field(default=Method.HB_DISCRETE, description='Optimization method')
    hyperparams: HyperParamsConfig = Field(default_factory=HyperParamsConfig)
    init: InitConfig
    stopping: StoppingConfig = Field(default_factory=StoppingConfig)
    estimator: EstimatorConfig = Field(default_factory=EstimatorConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)
    probe: ProbeConfig = Field(default_factory=ProbeConfig)
    sweep: Optional[SweepConfig] = Field(None, description='Grid, when the config drives a sweep')
    seed: int = Field(default=0, description='Seed of every random draw')

    @field_validator('seed')
    def validate_seed(cls, v):
        if not 0 <= v <= UINT64_MAX:
            raise ValueError('seed must be an unsigned 64-bit integer')
        return v

    @model_validator(mode='after')
    def validate_consistency(self):
        dim = self.objective.dim
        points = {
            'init.x0': self.init.x0,
            'init.x1': self.init.x1,
            'init.v0': self.init.v0,
            'hyperparams.anchor': self.hyperparams.anchor,
            'probe.anchor': self.probe.anchor,
        }
        for name, point in points.items():
            if point is not None and len(point) != dim:
                raise ValueError(f'{name} has {len(point)} coordinates, objective dim is {dim}')

        hp = self.hyperparams
        if hp.mode == 'manual':
            if self.method == Method.HB_ODE and hp.alpha is None:
                raise ValueError('manual hb_ode needs alpha')
            if self.method in (Method.HB_DISCRETE, Method.GD) and hp.gamma is None:
                raise ValueError(f'manual {self.method.value} needs gamma')
            if self.method == Method.HB_DISCRETE and hp.beta is None:
                raise ValueError('manual hb_discrete needs beta')
            if self.method == Method.GD and hp.beta not in (None, 0.0):
                raise ValueError('gd runs with beta = 0')
        return self


class SweepSpec(BaseModel):
    """A base experiment plus the grid to sweep over."""

    base: ExperimentConfig
    gamma: List[float] = Field(default_factory=list, description='Step sizes (discrete methods)')
    beta: List[float] = Field(default_factory=list, description='Momenta (defaults to the base beta)')
    alpha: List[float] = Field(default_factory=list, description='Frictions (hb_ode)')
    parallelism: int = Field(default=1, description='Concurrent workers')

    @model_validator(mode='after')
    def validate_grid(self):
        if self.parallelism < 1:
            raise ValueError('parallelism must be at least 1')
        if self.base.method == Method.HB_ODE:
            if not self.alpha:
                raise ValueError('hb_ode sweep needs a nonempty alpha grid')
        elif not self.gamma:
            raise ValueError(f'{self.base.method.value} sweep needs a nonempty gamma grid')
        if any(not v > 0 for v in self.gamma + self.alpha):
            raise ValueError('gamma and alpha grid values must be positive')
        if any(not 0 <= v < 1 for v in self.beta):
            raise ValueError('beta grid values must lie in the range (0, 1)')
        if self.base.method == Method.GD and any(v != 0 for v in self.beta):
            raise ValueError('gd sweeps run with beta = 0')
        return self

    @classmethod
    def from_config(cls, cfg: ExperimentConfig) -> 'SweepSpec':
        """Sweep over the [sweep] section of ``cfg``.

        Raises:
            ConfigError: If the grid is empty or invalid for the method, or parallelism < 1
        """
        grid = cfg.sweep or SweepConfig()
        try:
            return cls(base=cfg, gamma=grid.gamma, beta=grid.beta, alpha=grid.alpha, parallelism=grid.parallelism)
        except ValidationError as e:
            raise ConfigError(f'sweep: {e.errors()[0].get("msg", str(e))}') from e
