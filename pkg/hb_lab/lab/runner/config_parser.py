"""Experiment configuration text and the resolution of automatic hyperparameters.

Grammar::

    # comment (also allowed after a value)
    method = hb_discrete          top-level keys: method, seed
    seed = 7

    [objective]                   sections: objective, hyperparams, init, stopping,
    kind = quadratic              estimator, output, probe, sweep
    eigenvalues = 1, 9            lists are comma separated
    rotation_seed = 3

    [hyperparams]
    mode = auto                   or manual values: gamma, beta, alpha

Numbers are decimal or scientific; booleans are true/false. Every error carries the
line it comes from.
"""

import math
import typing
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Type, Union

import numpy as np
from pydantic import BaseModel, ValidationError

from ...utils import get_logger
from ..dynamics import run_gradient_descent
from ..geometry import hessian_normal_spectrum
from ..linalg import jacobi_eigh
from ..model import (
    ConfigError,
    EstimatorConfig,
    ExperimentConfig,
    HyperParamsConfig,
    HyperParamSource,
    InitConfig,
    LabError,
    Method,
    ObjectiveSpec,
    OutputConfig,
    ProbeConfig,
    StoppingConfig,
    SweepConfig,
)
from ..objectives import Objective, make_objective
from ..rates import gd_step, optimal_alpha, optimal_hyperparams

logger = get_logger()

SECTIONS: Dict[str, Type[BaseModel]] = {
    'objective': ObjectiveSpec,
    'hyperparams': HyperParamsConfig,
    'init': InitConfig,
    'stopping': StoppingConfig,
    'estimator': EstimatorConfig,
    'output': OutputConfig,
    'probe': ProbeConfig,
    'sweep': SweepConfig,
}
TOP_LEVEL_KEYS = ('method', 'seed')
PILOT_STEPS = 500

LineMap = Dict[Tuple[str, ...], int]


def _is_list_field(model: Type[BaseModel], key: str) -> bool:
    annotation = model.model_fields[key].annotation
    candidates = [annotation, *typing.get_args(annotation)]
    return any(typing.get_origin(a) is list for a in candidates)


def _parse_value(raw: str, as_list: bool) -> Any:
    if as_list:
        return [item.strip() for item in raw.split(',') if item.strip()]
    return raw


def _tokenize(text: str) -> Tuple[Dict[str, Any], LineMap]:
    """Split config text into nested raw values and the line of every key and section."""
    data: Dict[str, Any] = {}
    lines: LineMap = {}
    section: Optional[str] = None
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split('#', 1)[0].strip()
        if not line:
            continue
        if line.startswith('['):
            if not line.endswith(']'):
                raise ConfigError(f'malformed section header {line!r}', line=lineno)
            section = line[1:-1].strip()
            if section not in SECTIONS:
                raise ConfigError(f'unknown section [{section}]', line=lineno)
            if section in data:
                raise ConfigError(f'duplicate section [{section}]', line=lineno)
            data[section] = {}
            lines[(section, )] = lineno
            continue
        if '=' not in line:
            raise ConfigError(f'expected key = value, got {line!r}', line=lineno)
        key, value = (part.strip() for part in line.split('=', 1))
        if not key or not value:
            raise ConfigError(f'expected key = value, got {line!r}', line=lineno)

        if section is None:
            if key not in TOP_LEVEL_KEYS:
                raise ConfigError(f'unknown top-level key {key!r}', line=lineno)
            target, path = data, (key, )
        else:
            model = SECTIONS[section]
            if key not in model.model_fields or key in ('source', 'mu', 'L'):
                raise ConfigError(f'unknown key {key!r} in section [{section}]', line=lineno)
            value = _parse_value(value, _is_list_field(model, key))
            target, path = data[section], (section, key)
        if key in target:
            raise ConfigError(f'duplicate key {key!r}', line=lineno)
        target[key] = value
        lines[path] = lineno
    return data, lines


def _error_line(loc: Tuple, message: str, lines: LineMap) -> Optional[int]:
    path = tuple(str(p) for p in loc)
    while path:
        if path in lines:
            return lines[path]
        path = path[:-1]
    for key, lineno in sorted(lines.items(), key=lambda item: item[1]):
        if len(key) == 2 and f'{key[0]}.{key[1]}' in message:
            return lineno
    return None


def read_config(text: str) -> ExperimentConfig:
    """Parse and validate config text without resolving defaults.

    Raises:
        ConfigError: On unknown keys or sections, malformed lines and invalid values
    """
    data, lines = _tokenize(text)
    try:
        return ExperimentConfig(**data)
    except ValidationError as e:
        err = e.errors()[0]
        loc = err.get('loc', ())
        msg = err.get('msg', str(e))
        where = '.'.join(str(p) for p in loc)
        raise ConfigError(f'{where}: {msg}' if where else msg, line=_error_line(loc, msg, lines)) from e


def _pilot_point(obj: Objective, x0: np.ndarray) -> np.ndarray:
    """End point of a short gradient-descent run with step 1/L0, L0 the curvature at x0."""
    eigs, _ = jacobi_eigh(obj.hess(x0))
    L0 = float(np.max(np.abs(eigs)))
    if not (L0 > 0 and math.isfinite(L0)):
        L0 = obj.L_local
    pilot = run_gradient_descent(
        obj, x0, 1.0 / L0, StoppingConfig(max_iters=PILOT_STEPS, f_tol=1e-300, settle=False))
    logger.info(f'pilot: {pilot.steps} gradient steps with gamma={1.0 / L0:.6g}, '
                f'final |grad f|={pilot.grad_norms[-1]:.3g}')
    return pilot.final


def effective_constants(obj: Objective, cfg: ExperimentConfig) -> Tuple[float, float, HyperParamSource]:
    """(mu, L) for automatic hyperparameters: analytic, anchor spectrum, or pilot spectrum."""
    if obj.analytic_constants is not None:
        mu, L = obj.analytic_constants
        return mu, L, HyperParamSource.ANALYTIC
    if cfg.hyperparams.anchor is not None:
        spectrum = hessian_normal_spectrum(obj, cfg.hyperparams.anchor)
        return spectrum.mu, spectrum.L, HyperParamSource.ANCHOR
    spectrum = hessian_normal_spectrum(obj, _pilot_point(obj, np.asarray(cfg.init.x0, dtype=float)))
    return spectrum.mu, spectrum.L, HyperParamSource.PILOT


def resolve_hyperparams(cfg: ExperimentConfig, obj: Optional[Objective] = None) -> HyperParamsConfig:
    """Fill gamma, beta or alpha and record where they came from."""
    obj = obj or make_objective(cfg.objective)
    hp = cfg.hyperparams
    if hp.mode == 'manual':
        update: Dict[str, Any] = {'source': HyperParamSource.MANUAL}
        if obj.analytic_constants is not None:
            update['mu'], update['L'] = obj.analytic_constants
        if cfg.method == Method.GD:
            update['beta'] = 0.0
        return hp.model_copy(update=update)

    mu, L, source = effective_constants(obj, cfg)
    update = {'source': source, 'mu': mu, 'L': L}
    if cfg.method == Method.HB_ODE:
        update['alpha'] = optimal_alpha(mu)
    elif cfg.method == Method.GD:
        update['gamma'], update['beta'] = gd_step(mu, L), 0.0
    else:
        params = optimal_hyperparams(mu, L)
        update['gamma'], update['beta'] = params.gamma, params.beta
    chosen = ', '.join(f'{k}={update[k]:.6g}' for k in ('gamma', 'beta', 'alpha') if k in update)
    logger.info(f'auto hyperparameters from {source.value} mu={mu:.6g}, L={L:.6g}: {chosen}')
    return hp.model_copy(update=update)


def resolve_config(cfg: ExperimentConfig) -> ExperimentConfig:
    """Fill documented defaults: x1 = x0, v0 = 0 and automatic hyperparameters."""
    obj = make_objective(cfg.objective)
    init = cfg.init.model_copy(update={
        'x1': cfg.init.x1 if cfg.init.x1 is not None else list(cfg.init.x0),
        'v0': cfg.init.v0 if cfg.init.v0 is not None else [0.0] * len(cfg.init.x0),
    })
    resolved = cfg.model_copy(update={'init': init})
    return resolved.model_copy(update={'hyperparams': resolve_hyperparams(resolved, obj)})


def parse_config(text: str) -> ExperimentConfig:
    """Parse config text into a validated, fully resolved ExperimentConfig.

    Raises:
        ConfigError: With the offending line when known
    """
    cfg = read_config(text)
    try:
        return resolve_config(cfg)
    except ConfigError:
        raise
    except LabError as e:
        _, lines = _tokenize(text)
        line = lines.get(('hyperparams', 'anchor')) or lines.get(('init', 'x0'))
        raise ConfigError(f'cannot resolve hyperparameters: {e}', line=line) from e


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    return parse_config(Path(path).read_text(encoding='utf-8'))
