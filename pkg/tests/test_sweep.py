"""Unit tests for parameter sweeps and the async sweep manager."""

import os
import tempfile
import unittest

import pandas as pd
from pydantic import ValidationError

from hb_lab.lab.model import ConfigError, SweepSpec
from hb_lab.lab.rates import m_continuous
from hb_lab.lab.runner import SWEEP_COLUMNS, SweepManager, parse_config, run_sweep, sweep_points

GAMMAS = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45]
ALPHAS = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0]


def base_config(method='hb_discrete', extra=''):
    return parse_config(f"""\
method = {method}

[objective]
kind = quadratic
eigenvalues = 1, 9

[init]
x0 = 1, 1
{extra}""")


class TestSweepPoints(unittest.TestCase):
    """Test the grid layout."""

    def test_row_order_and_flags(self):
        spec = SweepSpec(base=base_config(), gamma=[0.1, 0.3], beta=[0.25, 0.5])
        points = sweep_points(spec)
        self.assertEqual([(p.beta, p.gamma) for p in points], [(0.25, 0.1), (0.25, 0.3), (0.5, 0.1), (0.5, 0.3)])
        self.assertEqual([p.index for p in points], [0, 1, 2, 3])
        self.assertEqual([p.expected_divergent for p in points], [False, True, False, False])

    def test_gd_grid(self):
        points = sweep_points(SweepSpec(base=base_config('gd'), gamma=[0.1, 0.25]))
        self.assertEqual([p.beta for p in points], [0.0, 0.0])
        self.assertEqual([p.expected_divergent for p in points], [False, True])

    def test_invalid_grids(self):
        with self.assertRaises(ValidationError):
            SweepSpec(base=base_config())
        with self.assertRaises(ValidationError):
            SweepSpec(base=base_config('hb_ode'), gamma=[0.1])
        with self.assertRaises(ValidationError):
            SweepSpec(base=base_config(), gamma=[0.1], beta=[1.5])
        with self.assertRaises(ValidationError):
            SweepSpec(base=base_config(), gamma=[-0.1])
        with self.assertRaises(ValidationError):
            SweepSpec(base=base_config('gd'), gamma=[0.1], beta=[0.5])
        with self.assertRaises(ValidationError):
            SweepSpec(base=base_config(), gamma=[0.1], parallelism=0)

    def test_from_config(self):
        cfg = base_config(extra='[sweep]\ngamma = 0.1, 0.2\nbeta = 0.3\nparallelism = 2\n')
        spec = SweepSpec.from_config(cfg)
        self.assertEqual((spec.gamma, spec.beta, spec.parallelism), ([0.1, 0.2], [0.3], 2))

    def test_from_config_rejects_invalid_grids(self):
        with self.assertRaises(ConfigError) as ctx:
            SweepSpec.from_config(base_config())
        self.assertIn('nonempty gamma grid', str(ctx.exception))
        with self.assertRaises(ConfigError):
            SweepSpec.from_config(base_config('hb_ode', extra='[sweep]\ngamma = 0.1\n'))
        cfg = base_config(extra='[sweep]\ngamma = 0.1\n')
        cfg = cfg.model_copy(update={'sweep': cfg.sweep.model_copy(update={'parallelism': 0})})
        with self.assertRaises(ConfigError):
            SweepSpec.from_config(cfg)


class TestSweepManager(unittest.IsolatedAsyncioTestCase):
    """Test SweepManager functionality."""

    async def test_lifecycle(self):
        manager = SweepManager(parallelism=2)
        await manager.start()
        self.assertTrue(manager._running)
        await manager.stop()
        self.assertFalse(manager._running)
        with self.assertRaises(ValueError):
            SweepManager(parallelism=0)

    async def test_run_point_requires_start(self):
        manager = SweepManager()
        spec = SweepSpec(base=base_config(), gamma=[0.1], beta=[0.25])
        with self.assertRaises(RuntimeError):
            await manager.run_point(spec.base, sweep_points(spec)[0], None)

    async def test_gamma_sweep(self):
        """Converging points match m(gamma, beta); points past 2(1+beta)/L diverge."""
        spec = SweepSpec(base=base_config(), gamma=GAMMAS, beta=[0.25], parallelism=3)
        async with SweepManager(spec.parallelism) as manager:
            rows = await manager.run(spec)
        self.assertEqual([r['index'] for r in rows], list(range(len(GAMMAS))))
        for row in rows:
            with self.subTest(gamma=row['gamma']):
                self.assertEqual(row['beta'], 0.25)
                if row['gamma'] >= 2 * 1.25 / 9:
                    self.assertTrue(row['expected_divergent'])
                    self.assertEqual(row['verdict'], 'divergent')
                else:
                    self.assertFalse(row['expected_divergent'])
                    self.assertEqual(row['verdict'], 'pass')
                    self.assertLessEqual(abs(row['fitted_rate'] - row['theory_rate']), 0.02)
        best = min((r for r in rows if r['fitted_rate'] is not None), key=lambda r: r['fitted_rate'])
        self.assertEqual(best['gamma'], 0.25)

    async def test_point_failure_becomes_error_row(self):
        base = base_config('hb_ode', '[stopping]\nstep = 1e-2\n')
        spec = SweepSpec(base=base, alpha=[2.0, 30.0])
        async with SweepManager(2) as manager:
            rows = await manager.run(spec)
        self.assertEqual(rows[0]['verdict'], 'pass')
        self.assertIsNone(rows[0]['error'])
        self.assertEqual(rows[1]['verdict'], 'error')
        self.assertIn('PreconditionError', rows[1]['error'])
        self.assertEqual(rows[1]['alpha'], 30.0)


class TestRunSweep(unittest.TestCase):
    """Test run_sweep end to end."""

    def test_worker_count_does_not_change_rows(self):
        kwargs = dict(base=base_config(), gamma=[0.1, 0.2, 0.25, 0.3], beta=[0.25, 0.5])
        serial = run_sweep(SweepSpec(parallelism=1, **kwargs))
        parallel = run_sweep(SweepSpec(parallelism=4, **kwargs))
        self.assertEqual(serial, parallel)

    def test_friction_sweep(self):
        """The fitted ODE rate peaks at alpha = 2 sqrt(mu)."""
        base = base_config('hb_ode', '[stopping]\nstep = 1e-2\n')
        rows = run_sweep(SweepSpec(base=base, alpha=ALPHAS, parallelism=4))
        fitted = [r['fitted_rate'] if r['fitted_rate'] is not None else float('-inf') for r in rows]
        best = rows[fitted.index(max(fitted))]
        self.assertEqual(best['alpha'], 2.0)
        self.assertLess(abs(best['fitted_rate'] - m_continuous(2.0, 1.0)), 0.05)

    def test_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            spec = SweepSpec(base=base_config(extra='[output]\nname = grid\n'), gamma=[0.1, 0.3], beta=[0.25])
            rows = run_sweep(spec, out_dir=tmp)
            frame = pd.read_csv(os.path.join(tmp, 'grid_sweep.csv'))
            self.assertEqual(list(frame.columns), SWEEP_COLUMNS)
            self.assertEqual(len(frame), len(rows))
            self.assertEqual(list(frame['verdict']), ['pass', 'divergent'])
            self.assertTrue(os.path.exists(os.path.join(tmp, 'grid_000_trajectory.csv')))
            self.assertTrue(os.path.exists(os.path.join(tmp, 'grid_001_trajectory.csv')))


if __name__ == '__main__':
    unittest.main()
