"""Run one experiment end to end: dynamics, rate fits, theory and reports."""

from typing import Optional, Tuple, Union

import numpy as np

from ...utils import get_logger
from ..dynamics import FlowTrajectory, Trajectory, integrate_ode, run_discrete, run_gradient_descent
from ..dynamics.flow import DEFAULT_HORIZON_DECAYS
from ..estimator import compare_to_theory, estimate_rate, halve_exponent
from ..geometry import hessian_normal_spectrum
from ..model import (
    ComparisonReport,
    ExperimentConfig,
    ExperimentReport,
    GridKind,
    HyperParams,
    HyperParamsConfig,
    InsufficientDataError,
    InsufficientDecayError,
    InvalidSpecError,
    Method,
    NormalSpectrum,
    PreconditionError,
    RateEstimate,
    StabilityRangeError,
    StopReason,
    Verdict,
    VerdictStatus,
)
from ..objectives import Objective, make_objective
from ..rates import m_continuous, m_discrete
from .config_parser import resolve_config
from .report import output_dir, write_report_files

logger = get_logger()

AnyTrajectory = Union[Trajectory, FlowTrajectory]


def is_resolved(cfg: ExperimentConfig) -> bool:
    hp = cfg.hyperparams
    if cfg.init.x1 is None or cfg.init.v0 is None:
        return False
    if cfg.method == Method.HB_ODE:
        return hp.alpha is not None
    return hp.gamma is not None and hp.beta is not None


def simulate(obj: Objective, cfg: ExperimentConfig) -> AnyTrajectory:
    """Run the configured method on a resolved config."""
    hp, stop = cfg.hyperparams, cfg.stopping
    if cfg.method == Method.HB_ODE:
        mu = hp.mu if hp.mu is not None else obj.mu_local
        horizon = stop.horizon if stop.horizon is not None else DEFAULT_HORIZON_DECAYS / m_continuous(hp.alpha, mu)
        return integrate_ode(obj, cfg.init.x0, cfg.init.v0, hp.alpha, h=stop.step, T=horizon, L=hp.L,
                             blow_up_bound=stop.blow_up_bound)
    if cfg.method == Method.GD:
        return run_gradient_descent(obj, cfg.init.x0, hp.gamma, stop)
    return run_discrete(obj, cfg.init.x0, cfg.init.x1, HyperParams(gamma=hp.gamma, beta=hp.beta), stop)


def limit_spectrum(obj: Objective, point: np.ndarray) -> Optional[NormalSpectrum]:
    """Hessian spectrum at the final point, or None when it is not near the minimizer set."""
    try:
        spectrum = hessian_normal_spectrum(obj, point)
    except PreconditionError:
        return None
    return spectrum if spectrum.nonzero_eigs else None


def effective_curvature(obj: Objective, cfg: ExperimentConfig,
                        spectrum: Optional[NormalSpectrum]) -> Tuple[Optional[float], Optional[float]]:
    """(mu, L) of the theory: analytic constants, else the limit spectrum, else the resolved values."""
    if obj.analytic_constants is not None:
        return obj.analytic_constants
    if spectrum is not None:
        return spectrum.mu, spectrum.L
    return cfg.hyperparams.mu, cfg.hyperparams.L


def theory_rate(cfg: ExperimentConfig, mu: Optional[float], L: Optional[float]) -> Optional[float]:
    """Distance rate predicted for the configured method."""
    hp = cfg.hyperparams
    if mu is None or (L is None and cfg.method != Method.HB_ODE):
        return None
    try:
        if cfg.method == Method.HB_ODE:
            return m_continuous(hp.alpha, mu)
        return m_discrete(hp.gamma, hp.beta or 0.0, mu, L)
    except (StabilityRangeError, InvalidSpecError) as e:
        logger.warning(f'no theoretical rate: {e}')
        return None


def fit_series(traj: AnyTrajectory, series: np.ndarray, cfg: ExperimentConfig) -> Tuple[Optional[RateEstimate], str]:
    est_cfg = cfg.estimator
    if isinstance(traj, FlowTrajectory):
        kind, step = GridKind.PER_UNIT_TIME, traj.step
    else:
        kind, step = GridKind.PER_ITERATION, None
    try:
        return estimate_rate(series, kind, step=step, allow_prefactor=est_cfg.allow_prefactor, lo=est_cfg.window_lo,
                             hi=est_cfg.window_hi), ''
    except (InsufficientDecayError, InsufficientDataError) as e:
        return None, str(e)


def run_experiment(cfg: ExperimentConfig, out_dir: Optional[str] = None, write: bool = True) -> ExperimentReport:
    """Execute the method, fit the distance-to-final series and compare with theory.

    Divergence produces a report with verdict ``divergent``. Files are written when an
    output directory is configured, passed in, or set through ``HBLAB_OUT``.

    Args:
        cfg: Experiment configuration, resolved here when it is not yet
        out_dir: Output directory overriding the config
        write: Set False to skip every file

    Returns:
        ExperimentReport with the trajectory attached
    """
    if not is_resolved(cfg):
        cfg = resolve_config(cfg)
    obj = make_objective(cfg.objective)
    traj = simulate(obj, cfg)

    if traj.stop_reason == StopReason.DIVERGENCE:
        verdict = Verdict(status=VerdictStatus.DIVERGENT, details=f'diverged after {traj.steps} steps')
        report = ExperimentReport(config=cfg, method=cfg.method, stop_reason=traj.stop_reason, steps=traj.steps,
                                  verdict=verdict, trajectory=traj)
    else:
        final = traj.final
        spectrum = limit_spectrum(obj, final)
        mu, L = effective_curvature(obj, cfg, spectrum)
        theory = theory_rate(cfg, mu, L)
        estimate, fit_error = fit_series(traj, traj.dist_to_final, cfg)
        fgap_estimate, _ = fit_series(traj, traj.f_gaps, cfg)

        if estimate is None:
            verdict = Verdict(status=VerdictStatus.FAIL, details=f'distance series not fitted: {fit_error}')
        elif theory is None:
            verdict = Verdict(status=VerdictStatus.FAIL, details='no theoretical rate for these hyperparameters')
        else:
            verdict = compare_to_theory(estimate, theory, cfg.estimator.eps, cfg.estimator.min_r_squared)
        report = ExperimentReport(
            config=cfg,
            method=cfg.method,
            stop_reason=traj.stop_reason,
            steps=traj.steps,
            mu=mu,
            L=L,
            theory_rate=theory,
            estimate=estimate,
            fgap_estimate=fgap_estimate,
            fgap_distance_rate=halve_exponent(fgap_estimate) if fgap_estimate else None,
            verdict=verdict,
            final_point=[float(v) for v in final],
            final_grad_norm=float(np.linalg.norm(obj.grad(final))),
            kernel_dim=spectrum.kernel_dim if spectrum else None,
            trajectory=traj,
        )
    logger.info(f'{cfg.output.name}: {cfg.method.value} on {obj.kind.value} -> {report.verdict.status.value}')

    directory = output_dir(cfg.output.dir, out_dir) if write else None
    if directory is not None:
        report.files = write_report_files(report, directory, cfg.output.name)
    return report


def compare_methods(cfg: ExperimentConfig, out_dir: Optional[str] = None) -> ComparisonReport:
    """Heavy ball and gradient descent, both with automatic hyperparameters, from the same start."""
    auto = HyperParamsConfig(mode='auto', anchor=cfg.hyperparams.anchor)
    runs = {}
    for method, suffix in ((Method.HB_DISCRETE, 'hb'), (Method.GD, 'gd')):
        variant = cfg.model_copy(update={
            'method': method,
            'hyperparams': auto,
            'output': cfg.output.model_copy(update={'name': f'{cfg.output.name}_{suffix}'}),
        })
        runs[suffix] = run_experiment(resolve_config(variant), out_dir)
    hb, gd = runs['hb'], runs['gd']
    accelerates = bool(hb.estimate and gd.estimate and hb.estimate.rate < gd.estimate.rate)
    return ComparisonReport(hb=hb, gd=gd, accelerates=accelerates)
