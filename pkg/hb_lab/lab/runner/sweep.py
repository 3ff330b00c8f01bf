"""Parameter sweeps executed by an async manager over a bounded thread pool."""

import asyncio
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from ...utils import get_logger
from ..model import ExperimentConfig, HyperParamSource, Method, SweepSpec, VerdictStatus
from ..objectives import make_objective
from .experiment import run_experiment
from .report import REPORT_COLUMNS, output_dir, report_row, write_csv, write_trajectory

logger = get_logger()

SWEEP_COLUMNS = ['index'] + REPORT_COLUMNS + ['expected_divergent', 'error']


class SweepPoint(BaseModel):
    """One grid point of a sweep."""

    index: int = Field(..., description='Position in the grid (row order)')
    gamma: Optional[float] = Field(None, description='Step size')
    beta: Optional[float] = Field(None, description='Momentum')
    alpha: Optional[float] = Field(None, description='Friction')
    expected_divergent: bool = Field(default=False, description='gamma >= 2(1+beta)/L')


def sweep_points(spec: SweepSpec) -> List[SweepPoint]:
    """Grid points in row order: beta outer, gamma inner for discrete sweeps; alpha for the ODE."""
    base = spec.base
    if base.method == Method.HB_ODE:
        return [SweepPoint(index=i, alpha=a) for i, a in enumerate(spec.alpha)]
    L = base.hyperparams.L
    if L is None:
        L = (make_objective(base.objective).analytic_constants or (None, None))[1]
    if base.method == Method.GD:
        betas = [0.0]
    else:
        betas = spec.beta or [base.hyperparams.beta if base.hyperparams.beta is not None else 0.0]
    points = []
    for beta in betas:
        for gamma in spec.gamma:
            flagged = L is not None and gamma >= 2 * (1 + beta) / L
            points.append(SweepPoint(index=len(points), gamma=gamma, beta=beta, expected_divergent=flagged))
    return points


def point_config(base: ExperimentConfig, point: SweepPoint) -> ExperimentConfig:
    """Base config with the grid point's hyperparameters and a per-point output name."""
    hp = base.hyperparams.model_copy(update={
        'mode': 'manual',
        'source': HyperParamSource.MANUAL,
        'gamma': point.gamma if point.gamma is not None else base.hyperparams.gamma,
        'beta': point.beta if point.beta is not None else base.hyperparams.beta,
        'alpha': point.alpha if point.alpha is not None else base.hyperparams.alpha,
    })
    output = base.output.model_copy(update={'name': f'{base.output.name}_{point.index:03d}'})
    return base.model_copy(update={'hyperparams': hp, 'output': output, 'sweep': None})


def evaluate_point(base: ExperimentConfig, point: SweepPoint, directory: Optional[Path]) -> Dict[str, Any]:
    """Run one grid point; failures become a row with verdict ``error``."""
    cfg = point_config(base, point)
    try:
        report = run_experiment(cfg, write=False)
        row = report_row(report)
        row['error'] = None
        if directory is not None and report.trajectory is not None:
            write_trajectory(report.trajectory, directory / f'{cfg.output.name}_trajectory.csv')
    except Exception as e:
        logger.error(f'sweep point {point.index} failed: {e}')
        row = {c: None for c in REPORT_COLUMNS}
        row.update({
            'objective': base.objective.kind.value,
            'method': base.method.value,
            'gamma': cfg.hyperparams.gamma,
            'beta': cfg.hyperparams.beta,
            'alpha': cfg.hyperparams.alpha,
            'verdict': VerdictStatus.ERROR.value,
            'error': f'{type(e).__name__}: {e}',
        })
    row['index'] = point.index
    row['expected_divergent'] = point.expected_divergent
    return row


class SweepManager:
    """Dispatches sweep points onto at most ``parallelism`` worker threads.

    Results are gathered by grid index, so the row order never depends on the worker count.
    """

    def __init__(self, parallelism: int = 1):
        if parallelism < 1:
            raise ValueError(f'parallelism must be at least 1, got {parallelism}')
        self.parallelism = parallelism
        self._executor: Optional[ThreadPoolExecutor] = None
        self._running = False

    async def start(self) -> None:
        """Start the worker pool."""
        if self._running:
            return
        self._executor = ThreadPoolExecutor(max_workers=self.parallelism, thread_name_prefix='hb-sweep')
        self._running = True
        logger.info(f'Sweep manager started with {self.parallelism} workers')

    async def stop(self) -> None:
        """Stop the worker pool, waiting for running points."""
        if not self._running:
            return
        self._running = False
        self._executor.shutdown(wait=True)
        self._executor = None
        logger.info('Sweep manager stopped')

    async def run_point(self, base: ExperimentConfig, point: SweepPoint, directory: Optional[Path]) -> Dict[str, Any]:
        if not self._running:
            raise RuntimeError('Sweep manager is not running')
        loop = asyncio.get_running_loop()
        row = await loop.run_in_executor(self._executor, evaluate_point, base, point, directory)
        logger.info(f'sweep point {point.index} done: {row["verdict"]}')
        return row

    async def run(self, spec: SweepSpec, out_dir: Optional[str] = None) -> List[Dict[str, Any]]:
        """Evaluate every grid point and write ``<name>_sweep.csv`` when an output directory is known.

        Returns:
            One row per grid point in grid order
        """
        directory = output_dir(spec.base.output.dir, out_dir)
        points = sweep_points(spec)
        rows = await asyncio.gather(*(self.run_point(spec.base, p, directory) for p in points))
        rows = list(rows)
        if directory is not None:
            write_csv(rows, SWEEP_COLUMNS, directory / f'{spec.base.output.name}_sweep.csv')
        return rows

    async def __aenter__(self):
        await self.start()
        return self

    async def __aexit__(self, exc_type, exc_val, exc_tb):
        await self.stop()


async def run_sweep_async(spec: SweepSpec, out_dir: Optional[str] = None) -> List[Dict[str, Any]]:
    async with SweepManager(spec.parallelism) as manager:
        return await manager.run(spec, out_dir)


def run_sweep(spec: SweepSpec, out_dir: Optional[str] = None) -> List[Dict[str, Any]]:
    """Run a sweep to completion and return its rows in grid order."""
    return asyncio.run(run_sweep_async(spec, out_dir))
