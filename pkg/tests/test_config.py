"""Unit tests for experiment config parsing and hyperparameter resolution."""

import math
import os
import tempfile
import unittest

from hb_lab.lab.model import ConfigError, HyperParamSource, Method
from hb_lab.lab.runner import load_config, parse_config, read_config

QUADRATIC = """\
# two-dimensional quadratic
method = hb_discrete

[objective]
kind = quadratic
eigenvalues = 1, 9   # mu, L

[init]
x0 = 1, 1
"""


class TestReadConfig(unittest.TestCase):
    """Test the config grammar."""

    def test_minimal(self):
        cfg = read_config(QUADRATIC)
        self.assertEqual(cfg.method, Method.HB_DISCRETE)
        self.assertEqual(cfg.objective.eigenvalues, [1.0, 9.0])
        self.assertEqual(cfg.objective.dim, 2)
        self.assertEqual(cfg.init.x0, [1.0, 1.0])
        self.assertIsNone(cfg.init.x1)
        self.assertEqual(cfg.hyperparams.mode, 'auto')
        self.assertEqual(cfg.seed, 0)

    def test_top_level_key_inside_section(self):
        with self.assertRaises(ConfigError) as ctx:
            read_config(QUADRATIC + '\nseed = 7\n')
        self.assertEqual(ctx.exception.line, 11)

    def test_all_sections(self):
        text = 'seed = 7\n' + QUADRATIC + """
[stopping]
f_tol = 1e-12
settle = false

[estimator]
eps = 0.05

[output]
name = quad

[probe]
radii = 0.3, 0.1
n_samples = 5000

[sweep]
gamma = 0.1, 0.2
parallelism = 2
"""
        cfg = read_config(text)
        self.assertEqual(cfg.seed, 7)
        self.assertEqual(cfg.stopping.f_tol, 1e-12)
        self.assertFalse(cfg.stopping.settle)
        self.assertEqual(cfg.estimator.eps, 0.05)
        self.assertEqual(cfg.output.name, 'quad')
        self.assertEqual(cfg.probe.radii, [0.3, 0.1])
        self.assertEqual(cfg.sweep.gamma, [0.1, 0.2])
        self.assertEqual(cfg.sweep.parallelism, 2)

    def test_unknown_key(self):
        text = QUADRATIC + 'bogus = 1\n'
        with self.assertRaises(ConfigError) as ctx:
            read_config(text)
        self.assertEqual(ctx.exception.line, 10)
        self.assertIn('bogus', str(ctx.exception))
        self.assertIn('line 10', str(ctx.exception))

    def test_unknown_section(self):
        with self.assertRaises(ConfigError) as ctx:
            read_config(QUADRATIC + '[extras]\n')
        self.assertEqual(ctx.exception.line, 10)

    def test_malformed_lines(self):
        for bad in ('x0\n', '[init\n', 'x0 =\n'):
            with self.subTest(line=bad), self.assertRaises(ConfigError) as ctx:
                read_config(QUADRATIC + bad)
            self.assertEqual(ctx.exception.line, 10)

    def test_duplicates(self):
        with self.assertRaises(ConfigError) as ctx:
            read_config(QUADRATIC + 'x0 = 2, 2\n')
        self.assertEqual(ctx.exception.line, 10)
        with self.assertRaises(ConfigError):
            read_config(QUADRATIC + '[init]\n')

    def test_resolved_fields_are_not_settable(self):
        with self.assertRaises(ConfigError):
            read_config(QUADRATIC + '[hyperparams]\nsource = analytic\n')

    def test_invalid_beta(self):
        text = QUADRATIC + '[hyperparams]\ngamma = 0.1\nbeta = 1.2\n'
        with self.assertRaises(ConfigError) as ctx:
            read_config(text)
        self.assertEqual(ctx.exception.line, 12)
        self.assertIn('(0, 1)', str(ctx.exception))
        self.assertIsInstance(ctx.exception, ValueError)

    def test_invalid_number(self):
        with self.assertRaises(ConfigError) as ctx:
            read_config(QUADRATIC.replace('eigenvalues = 1, 9', 'eigenvalues = 1, nine'))
        self.assertEqual(ctx.exception.line, 6)

    def test_dimension_mismatch(self):
        with self.assertRaises(ConfigError) as ctx:
            read_config(QUADRATIC.replace('x0 = 1, 1', 'x0 = 1, 1, 1'))
        self.assertEqual(ctx.exception.line, 9)

    def test_manual_needs_beta(self):
        with self.assertRaises(ConfigError):
            read_config(QUADRATIC + '[hyperparams]\ngamma = 0.1\n')


class TestParseConfig(unittest.TestCase):
    """Test resolution of defaults and automatic hyperparameters."""

    def test_auto_analytic(self):
        cfg = parse_config(QUADRATIC)
        hp = cfg.hyperparams
        self.assertAlmostEqual(hp.gamma, 0.25, places=15)
        self.assertAlmostEqual(hp.beta, 0.25, places=15)
        self.assertEqual(hp.source, HyperParamSource.ANALYTIC)
        self.assertEqual((hp.mu, hp.L), (1.0, 9.0))
        self.assertEqual(cfg.init.x1, [1.0, 1.0])
        self.assertEqual(cfg.init.v0, [0.0, 0.0])

    def test_auto_gd_and_ode(self):
        gd = parse_config(QUADRATIC.replace('hb_discrete', 'gd'))
        self.assertAlmostEqual(gd.hyperparams.gamma, 0.2, places=15)
        self.assertEqual(gd.hyperparams.beta, 0.0)
        ode = parse_config(QUADRATIC.replace('hb_discrete', 'hb_ode'))
        self.assertAlmostEqual(ode.hyperparams.alpha, 2.0, places=15)

    def test_manual_inferred(self):
        cfg = parse_config(QUADRATIC + '[hyperparams]\ngamma = 0.1\nbeta = 0.5\n')
        self.assertEqual(cfg.hyperparams.mode, 'manual')
        self.assertEqual(cfg.hyperparams.source, HyperParamSource.MANUAL)
        self.assertEqual((cfg.hyperparams.gamma, cfg.hyperparams.beta), (0.1, 0.5))
        self.assertEqual(cfg.hyperparams.L, 9.0)

    def test_manual_gd(self):
        cfg = parse_config(QUADRATIC.replace('hb_discrete', 'gd') + '[hyperparams]\ngamma = 0.2\n')
        self.assertEqual(cfg.hyperparams.beta, 0.0)

    def test_anchor(self):
        text = f"""\
[objective]
kind = sine_valley
mu_t = 1
L_t = 9

[hyperparams]
anchor = 1, 0, {math.pi / 2!r}

[init]
x0 = 1.05, 0.1, 1.6
"""
        hp = parse_config(text).hyperparams
        self.assertEqual(hp.source, HyperParamSource.ANCHOR)
        self.assertAlmostEqual(hp.mu, 1.0, places=9)
        self.assertAlmostEqual(hp.L, 9.0, places=9)
        self.assertAlmostEqual(hp.gamma, 0.25, places=8)

    def test_bad_anchor(self):
        text = """\
[objective]
kind = sine_valley
mu_t = 1
L_t = 9

[hyperparams]
anchor = 2, 1, 0

[init]
x0 = 1.05, 0.1, 1.6
"""
        with self.assertRaises(ConfigError) as ctx:
            parse_config(text)
        self.assertEqual(ctx.exception.line, 7)

    def test_pilot(self):
        text = """\
[objective]
kind = sine_valley
mu_t = 1
L_t = 9

[init]
x0 = 1.05, 0.1, 1.6207963267948966
"""
        hp = parse_config(text).hyperparams
        self.assertEqual(hp.source, HyperParamSource.PILOT)
        self.assertLess(abs(hp.mu - 1.0), 1e-2)
        self.assertAlmostEqual(hp.L, 9.0, places=9)

    def test_load_config(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'quad.cfg')
            with open(path, 'w') as f:
                f.write(QUADRATIC)
            self.assertEqual(load_config(path), parse_config(QUADRATIC))


if __name__ == '__main__':
    unittest.main()
