"""Sub-commands of the ``hblab`` command line."""

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from ...utils import get_logger
from ..geometry import local_equivalence_report
from ..model import ConfigError, ExperimentConfig, ExperimentReport, Method, SweepConfig, SweepSpec, VerdictStatus
from ..objectives import make_objective
from ..rates import (
    gd_rate,
    m_continuous,
    m_discrete,
    optimal_alpha,
    optimal_hyperparams,
    prior_ode_rates,
    spectral_report_continuous,
    spectral_report_discrete,
)
from ..runner import (
    REPORT_COLUMNS,
    SWEEP_COLUMNS,
    compare_methods,
    format_table,
    output_dir,
    read_config,
    report_row,
    resolve_config,
    run_experiment,
    run_sweep,
    summary_text,
    write_csv,
)
from .base import EXIT_CONFIG, EXIT_DIVERGENT, EXIT_FAIL, EXIT_PASS, Command, register_command

logger = get_logger()

RATES_COLUMNS = ['mu', 'L', 'kappa', 'alpha_star', 'm_cont', 'gamma_star', 'beta_star', 'm_disc', 'gd_rate']
PRIOR_COLUMNS = ['mu', 'L', 'assumption', 'rate', 'alpha']
SPECTRAL_COLUMNS = [
    'kind', 'gamma', 'beta', 'alpha', 'rho', 'abscissa', 'closed_form', 'theory_rate', 'max_abs_discrepancy',
    'eigenvalues'
]
PROBE_COLUMNS = [
    'objective', 'region', 'n_samples', 'seed', 'pl', 'qg', 'eb', 'qsc', 'min_nonzero_eig', 'max_nonzero_eig',
    'kernel_dim'
]


def emit(rows: List[Dict[str, Any]], columns: List[str], args: argparse.Namespace, stem: str) -> None:
    """Print rows as CSV or aligned text and save them as ``<stem>.csv`` when an output directory is known."""
    if args.format == 'csv':
        write_csv(rows, columns, sys.stdout)
    else:
        print(format_table(rows, columns))
    directory = output_dir(None, args.out)
    if directory is not None:
        write_csv(rows, columns, directory / f'{stem}.csv')


def load(args: argparse.Namespace, method: Optional[Method] = None) -> ExperimentConfig:
    """Read, override and resolve the ``--config`` file."""
    if not args.config:
        raise ConfigError(f'the {args.command} command needs --config')
    cfg = read_config(Path(args.config).read_text(encoding='utf-8'))
    update: Dict[str, Any] = {}
    if args.seed is not None:
        update['seed'] = args.seed
    if method is not None and cfg.method != method:
        update['method'] = method
    return resolve_config(cfg.model_copy(update=update) if update else cfg)


def verdict_exit_code(report: ExperimentReport) -> int:
    return {
        VerdictStatus.PASS: EXIT_PASS,
        VerdictStatus.DIVERGENT: EXIT_DIVERGENT,
        VerdictStatus.ERROR: EXIT_CONFIG,
    }.get(report.verdict.status, EXIT_FAIL)


def print_report(report: ExperimentReport, args: argparse.Namespace) -> None:
    if args.format == 'csv':
        write_csv([report_row(report)], REPORT_COLUMNS, sys.stdout)
    else:
        print(summary_text(report), end='')


@register_command('rates')
class RatesCommand(Command):
    """Closed-form rates and optimal hyperparameters for (mu, L) pairs.

    Args:
        mu: Smallest curvature, one value per pair
        L: Largest curvature, one value per pair
        prior: Also list previously published exponents of the heavy ball ODE
    """

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument('--mu', type=float, nargs='+', default=[1.0], help=cls.help_for('mu'))
        parser.add_argument('--L', type=float, nargs='+', default=[9.0], help=cls.help_for('L'))
        parser.add_argument('--prior', action='store_true', help=cls.help_for('prior'))

    def run(self, args):
        if len(args.mu) != len(args.L):
            raise ConfigError(f'--mu has {len(args.mu)} values but --L has {len(args.L)}')
        rows, prior = [], []
        for mu, L in zip(args.mu, args.L):
            alpha = optimal_alpha(mu)
            params = optimal_hyperparams(mu, L)
            rows.append({
                'mu': mu,
                'L': L,
                'kappa': L / mu,
                'alpha_star': alpha,
                'm_cont': m_continuous(alpha, mu),
                'gamma_star': params.gamma,
                'beta_star': params.beta,
                'm_disc': m_discrete(params.gamma, params.beta, mu, L) if params.beta > 0 else gd_rate(L / mu),
                'gd_rate': gd_rate(L / mu),
            })
            prior += [{'mu': mu, 'L': L, **p.model_dump()} for p in prior_ode_rates(mu, L)]
        emit(rows, RATES_COLUMNS, args, 'rates')
        if args.prior:
            print()
            emit(prior, PRIOR_COLUMNS, args, 'prior_rates')
        return EXIT_PASS


@register_command('run')
class RunCommand(Command):
    """Run one experiment and check its fitted rate against theory.

    Exit code 0 on pass, 1 on fail, 2 on divergence.
    """

    def run(self, args):
        report = run_experiment(load(args), args.out)
        print_report(report, args)
        return verdict_exit_code(report)


@register_command('ode')
class OdeCommand(Command):
    """Integrate the heavy ball ODE for the configured objective.

    The config's method is replaced by hb_ode.
    """

    def run(self, args):
        report = run_experiment(load(args, Method.HB_ODE), args.out)
        print_report(report, args)
        return verdict_exit_code(report)


@register_command('sweep')
class SweepCommand(Command):
    """Sweep gamma, beta or alpha grids from the [sweep] section.

    Rows marked expected_divergent lie beyond the stability bound 2(1+beta)/L.
    """

    def run(self, args):
        cfg = load(args)
        if args.parallelism is not None:
            grid = (cfg.sweep or SweepConfig()).model_copy(update={'parallelism': args.parallelism})
            cfg = cfg.model_copy(update={'sweep': grid})
        rows = run_sweep(SweepSpec.from_config(cfg), args.out)
        if args.format == 'csv':
            write_csv(rows, SWEEP_COLUMNS, sys.stdout)
        else:
            print(format_table(rows, ['index', 'gamma', 'beta', 'alpha', 'theory_rate', 'fitted_rate', 'verdict']))
        unexpected = [r for r in rows if r['verdict'] != VerdictStatus.PASS.value and not r['expected_divergent']]
        if any(r['verdict'] == VerdictStatus.DIVERGENT.value for r in unexpected):
            return EXIT_DIVERGENT
        return EXIT_FAIL if unexpected else EXIT_PASS


@register_command('spectral')
class SpectralCommand(Command):
    """Generic and closed-form spectra of the discrete and continuous system matrices.

    Args:
        eigs: Eigenvalues of the normal Hessian block H = diag(eigs)
        d_t: Number of tangential directions
        gamma: Step size, defaults to the optimum for the given spectrum
        beta: Momentum, defaults to the optimum for the given spectrum
        alpha: Friction, defaults to 2 sqrt(min eigs)
    """

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument('--eigs', type=float, nargs='+', default=[1.0, 9.0], help=cls.help_for('eigs'))
        parser.add_argument('--d-t', dest='d_t', type=int, default=0, help=cls.help_for('d_t'))
        parser.add_argument('--gamma', type=float, default=None, help=cls.help_for('gamma'))
        parser.add_argument('--beta', type=float, default=None, help=cls.help_for('beta'))
        parser.add_argument('--alpha', type=float, default=None, help=cls.help_for('alpha'))

    def run(self, args):
        eigs = sorted(args.eigs)
        H = np.diag(eigs)
        optimum = optimal_hyperparams(eigs[0], eigs[-1])
        gamma = args.gamma if args.gamma is not None else optimum.gamma
        beta = args.beta if args.beta is not None else optimum.beta
        alpha = args.alpha if args.alpha is not None else optimal_alpha(eigs[0])
        rows = []
        for report, params in ((spectral_report_discrete(H, args.d_t, gamma, beta), {'gamma': gamma, 'beta': beta}),
                               (spectral_report_continuous(H, args.d_t, alpha), {'alpha': alpha})):
            rows.append({
                **report.model_dump(exclude={'eigenvalues'}),
                **params,
                'eigenvalues': ';'.join(f'{re:.17g}{im:+.17g}j' for re, im in report.eigenvalues),
            })
        emit(rows, SPECTRAL_COLUMNS, args, 'spectral')
        return EXIT_PASS


@register_command('probe')
class ProbeCommand(Command):
    """Estimate the PL, QG, EB and QSC constants on balls of shrinking radius around a minimizer.

    Uses the [probe] section: anchor (default: projection of init.x0), radii and n_samples.
    """

    def run(self, args):
        cfg = load(args)
        obj = make_objective(cfg.objective)
        anchor = cfg.probe.anchor if cfg.probe.anchor is not None else obj.project(cfg.init.x0).tolist()
        reports = local_equivalence_report(obj, anchor, cfg.probe.radii, cfg.probe.n_samples, cfg.seed)
        rows = [{
            'objective': cfg.objective.kind.value,
            'region': r.region.describe(),
            'n_samples': r.samples,
            'seed': r.seed,
            'pl': r.pl_const,
            'qg': r.qg_const,
            'eb': r.eb_const,
            'qsc': r.qsc_const,
            'min_nonzero_eig': r.hess_nonzero_eigs[0] if r.hess_nonzero_eigs else None,
            'max_nonzero_eig': r.hess_nonzero_eigs[-1] if r.hess_nonzero_eigs else None,
            'kernel_dim': r.kernel_dim,
        } for r in reports]
        emit(rows, PROBE_COLUMNS, args, f'{cfg.output.name}_probe')
        return EXIT_PASS


@register_command('compare')
class CompareCommand(Command):
    """Heavy ball against gradient descent, both with automatic hyperparameters, from the same start.

    Exit code 0 when heavy ball's fitted rate is below gradient descent's, 1 otherwise.
    """

    def run(self, args):
        result = compare_methods(load(args), args.out)
        rows = [report_row(result.hb), report_row(result.gd)]
        if args.format == 'csv':
            write_csv(rows, REPORT_COLUMNS, sys.stdout)
        else:
            print(format_table(rows, ['method', 'gamma', 'beta', 'theory_rate', 'fitted_rate', 'verdict']))
            print(f'accelerates: {result.accelerates}')
        return EXIT_PASS if result.accelerates else EXIT_FAIL
