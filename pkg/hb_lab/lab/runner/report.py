"""CSV and text emission of trajectories and experiment reports."""

import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Union

import pandas as pd

from ...utils import get_logger
from ..dynamics import FlowTrajectory, Trajectory
from ..model import ExperimentReport

logger = get_logger()

FLOAT_FORMAT = '%.17g'
OUTPUT_ENV = 'HBLAB_OUT'

REPORT_COLUMNS = [
    'objective', 'method', 'gamma', 'beta', 'alpha', 'mu', 'L', 'hp_source', 'stop_reason', 'steps', 'theory_rate',
    'fitted_rate', 'prefactor_degree', 'r_squared', 'window_lo', 'window_hi', 'fgap_rate', 'fgap_distance_rate',
    'final_grad_norm', 'kernel_dim', 'verdict'
]


def output_dir(configured: Optional[str] = None, override: Optional[str] = None) -> Optional[Path]:
    """Output directory: explicit override, then the config, then ``HBLAB_OUT``; None writes nothing."""
    chosen = override or configured or os.getenv(OUTPUT_ENV)
    if not chosen:
        return None
    path = Path(chosen)
    path.mkdir(parents=True, exist_ok=True)
    return path


def write_csv(rows: Sequence[Dict[str, Any]], columns: List[str], path: Union[str, Path, TextIO]) -> Optional[Path]:
    """UTF-8 CSV with a header row and 17 significant digits per float; ``path`` may be an open text stream."""
    frame = pd.DataFrame(list(rows), columns=columns)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep='', lineterminator='\n', encoding='utf-8')
    return Path(path) if isinstance(path, (str, Path)) else None


def format_float(v: Any) -> str:
    if v is None:
        return ''
    if isinstance(v, float):
        return FLOAT_FORMAT % v
    return str(v)


def format_table(rows: Sequence[Dict[str, Any]], columns: List[str]) -> str:
    """Aligned plain-text table."""
    cells = [[format_float(row.get(c)) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = ['  '.join(c.rjust(w) for c, w in zip(columns, widths))]
    lines += ['  '.join(v.rjust(w) for v, w in zip(r, widths)) for r in cells]
    return '\n'.join(lines)


def trajectory_frame(traj: Union[Trajectory, FlowTrajectory]) -> pd.DataFrame:
    if isinstance(traj, FlowTrajectory):
        return pd.DataFrame({
            't': traj.times,
            'f_gap': traj.f_gaps,
            'grad_norm': traj.grad_norms,
            'energy': traj.energy,
            'dist_to_final': traj.dist_to_final,
        })
    return pd.DataFrame({
        'n': range(len(traj)),
        'f_gap': traj.f_gaps,
        'grad_norm': traj.grad_norms,
        'dist_to_final': traj.dist_to_final,
    })


def write_trajectory(traj: Union[Trajectory, FlowTrajectory], path: Union[str, Path]) -> Path:
    trajectory_frame(traj).to_csv(
        path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n', encoding='utf-8')
    return Path(path)


def report_row(report: ExperimentReport) -> Dict[str, Any]:
    """Flat record of a report, echoing every resolved hyperparameter."""
    cfg = report.config
    hp = cfg.hyperparams
    est, fgap = report.estimate, report.fgap_estimate
    return {
        'objective': cfg.objective.kind.value,
        'method': report.method.value,
        'gamma': hp.gamma,
        'beta': hp.beta,
        'alpha': hp.alpha,
        'mu': report.mu if report.mu is not None else hp.mu,
        'L': report.L if report.L is not None else hp.L,
        'hp_source': hp.source.value,
        'stop_reason': report.stop_reason.value if report.stop_reason else None,
        'steps': report.steps,
        'theory_rate': report.theory_rate,
        'fitted_rate': est.rate if est else None,
        'prefactor_degree': est.prefactor_degree if est else None,
        'r_squared': est.r_squared if est else None,
        'window_lo': est.window.lo if est else None,
        'window_hi': est.window.hi if est else None,
        'fgap_rate': fgap.rate if fgap else None,
        'fgap_distance_rate': report.fgap_distance_rate,
        'final_grad_norm': report.final_grad_norm,
        'kernel_dim': report.kernel_dim,
        'verdict': report.verdict.status.value,
    }


def summary_text(report: ExperimentReport) -> str:
    """One-page human readable summary."""
    row = report_row(report)
    cfg = report.config
    lines = [
        f'hb-lab experiment: {cfg.output.name}',
        f'objective      : {cfg.objective.model_dump_json(exclude_none=True)}',
        f'method         : {row["method"]}',
        f'hyperparameters: gamma={format_float(row["gamma"])} beta={format_float(row["beta"])} '
        f'alpha={format_float(row["alpha"])} (source {row["hp_source"]})',
        f'curvature      : mu={format_float(row["mu"])} L={format_float(row["L"])}',
        f'init           : x0={cfg.init.x0}',
        f'stop           : {row["stop_reason"]} after {row["steps"]} steps',
        f'theory rate    : {format_float(row["theory_rate"])}',
        f'fitted rate    : {format_float(row["fitted_rate"])} (p={row["prefactor_degree"]}, '
        f'r2={format_float(row["r_squared"])}, window=[{row["window_lo"]}, {row["window_hi"]}])',
        f'f-gap rate     : {format_float(row["fgap_rate"])} '
        f'(distance equivalent {format_float(row["fgap_distance_rate"])})',
        f'final |grad f| : {format_float(row["final_grad_norm"])}',
        f'kernel dim     : {format_float(row["kernel_dim"])}',
        f'verdict        : {row["verdict"]}',
        f'details        : {report.verdict.details}',
    ]
    return '\n'.join(lines) + '\n'


def write_report_files(report: ExperimentReport, directory: Path, name: str) -> List[str]:
    """Write ``<name>_trajectory.csv``, ``<name>_report.csv`` and ``<name>_summary.txt``."""
    files = []
    if report.trajectory is not None:
        files.append(str(write_trajectory(report.trajectory, directory / f'{name}_trajectory.csv')))
    files.append(str(write_csv([report_row(report)], REPORT_COLUMNS, directory / f'{name}_report.csv')))
    summary = directory / f'{name}_summary.txt'
    summary.write_text(summary_text(report), encoding='utf-8')
    files.append(str(summary))
    logger.info(f'wrote {len(files)} files to {directory}')
    return files
