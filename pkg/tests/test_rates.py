"""Unit tests for the closed-form rate formulas."""

import math
import unittest

import numpy as np

from hb_lab.lab.model import InvalidSpecError, StabilityRangeError
from hb_lab.lab.rates import (
    block_eigenvalues_continuous,
    block_eigenvalues_discrete,
    fgap_theory_rate,
    gd_rate,
    gd_step,
    m_continuous,
    m_discrete,
    optimal_alpha,
    optimal_discrete_rate,
    optimal_hyperparams,
    prior_ode_rates,
)

CASES = [(1.0, 9.0, 0.25), (1.0, 100.0, 0.5), (1.0, 9.0, 0.5)]


def branch_boundaries(mu, L, beta):
    sb = math.sqrt(beta)
    return [(1 - sb)**2 / mu, (1 + sb)**2 / L, 2 * (1 + beta) / (L + mu)]


class TestContinuousRate(unittest.TestCase):
    """Test m(alpha) of the heavy ball ODE."""

    def test_examples(self):
        self.assertAlmostEqual(m_continuous(2, 1), 1.0, places=15)
        self.assertAlmostEqual(m_continuous(1, 1), 0.5, places=15)
        self.assertAlmostEqual(m_continuous(3, 1), 0.5 * (3 - math.sqrt(5)), places=15)
        self.assertAlmostEqual(optimal_alpha(1), 2.0)
        self.assertAlmostEqual(optimal_alpha(0.25), 1.0)

    def test_maximized_at_optimal_alpha(self):
        """On a 1e-3 grid the maximum sits at 2 sqrt(mu) with value sqrt(mu)."""
        alphas = np.arange(1, 10001) * 1e-3
        for mu in (0.25, 1.0, 4.0):
            rates = [m_continuous(a, mu) for a in alphas]
            best = int(np.argmax(rates))
            self.assertAlmostEqual(alphas[best], optimal_alpha(mu), places=9)
            self.assertAlmostEqual(rates[best], math.sqrt(mu), places=12)

    def test_invalid_input(self):
        with self.assertRaises(InvalidSpecError):
            m_continuous(0, 1)
        with self.assertRaises(InvalidSpecError):
            m_continuous(1, -1)


class TestDiscreteRate(unittest.TestCase):
    """Test m(gamma, beta) and the optimal hyperparameters."""

    def test_examples(self):
        self.assertAlmostEqual(m_discrete(0.25, 0.25, 1, 9), 0.5, places=12)
        self.assertAlmostEqual(m_discrete(0.1, 0.25, 1, 9), 0.575 + math.sqrt(0.080625), places=12)
        self.assertAlmostEqual(m_discrete(0.27, 0.25, 1, 9), 0.59 + math.sqrt(0.59**2 - 0.25), places=12)
        self.assertAlmostEqual(m_discrete(0.02, 0.5, 1, 100), 0.74 + math.sqrt(0.74**2 - 0.5), places=12)
        self.assertAlmostEqual(m_discrete(0.2, 0.4, 1, 9), math.sqrt(0.4), places=12)

    def test_gradient_descent_limit(self):
        self.assertAlmostEqual(m_discrete(0.2, 0.0, 1, 9), 0.8, places=15)
        self.assertAlmostEqual(m_discrete(0.1, 0.0, 1, 9), 0.9, places=15)

    def test_stability_range(self):
        with self.assertRaises(StabilityRangeError):
            m_discrete(2 * 1.25 / 9, 0.25, 1, 9)
        with self.assertRaises(StabilityRangeError):
            m_discrete(0.0, 0.25, 1, 9)
        with self.assertRaises(StabilityRangeError):
            m_discrete(1.0, 0.25, 1, 9)

    def test_invalid_spec(self):
        with self.assertRaises(InvalidSpecError):
            m_discrete(0.1, 0.25, 2, 1)
        with self.assertRaises(InvalidSpecError):
            m_discrete(0.1, 1.0, 1, 9)
        with self.assertRaises(InvalidSpecError):
            m_discrete(0.1, -0.1, 1, 9)
        self.assertIsInstance(InvalidSpecError('x'), ValueError)

    def test_rate_below_one(self):
        """Inside the stability range every rate lies in [0, 1)."""
        for mu, L, beta in CASES:
            bound = 2 * (1 + beta) / L
            for gamma in np.linspace(bound * 1e-3, bound * (1 - 1e-3), 200):
                m = m_discrete(gamma, beta, mu, L)
                self.assertGreaterEqual(m, math.sqrt(beta) - 1e-12)
                self.assertLess(m, 1.0)

    def test_branch_continuity(self):
        """Both sides of every interior branch boundary agree within 1e-6.

        The branch with the sqrt(beta) plateau meets its neighbours through a square-root
        cusp, so the probe offset is 1e-13 rather than 1e-9.
        """
        delta = 1e-13
        for mu, L, beta in CASES:
            bound = 2 * (1 + beta) / L
            for b in branch_boundaries(mu, L, beta):
                if not (0 < b - delta and b + delta < bound):
                    continue
                with self.subTest(mu=mu, L=L, beta=beta, boundary=b):
                    left = m_discrete(b - delta, beta, mu, L)
                    right = m_discrete(b + delta, beta, mu, L)
                    mid = m_discrete(b, beta, mu, L)
                    self.assertLess(abs(left - right), 1e-6)
                    self.assertLess(abs(left - mid), 1e-6)

    def test_smooth_boundary_continuity(self):
        """Away from the cusp the crossover 2(1+beta)/(L+mu) is continuous at 1e-9 offsets."""
        b = 2 * 1.5 / 101
        self.assertLess(abs(m_discrete(b - 1e-9, 0.5, 1, 100) - m_discrete(b + 1e-9, 0.5, 1, 100)), 1e-6)

    def test_optimal_hyperparams(self):
        hp = optimal_hyperparams(1, 9)
        self.assertAlmostEqual(hp.gamma, 0.25, places=15)
        self.assertAlmostEqual(hp.beta, 0.25, places=15)
        self.assertAlmostEqual(optimal_discrete_rate(1, 9), 0.5, places=15)
        hp = optimal_hyperparams(1, 100)
        self.assertAlmostEqual(hp.gamma, 4 / 121, places=15)
        self.assertAlmostEqual(hp.beta, (9 / 11)**2, places=15)
        self.assertAlmostEqual(optimal_discrete_rate(1, 100), 9 / 11, places=15)
        hp = optimal_hyperparams(1, 1)
        self.assertAlmostEqual(hp.gamma, 1.0)
        self.assertEqual(hp.beta, 0.0)

    def test_optimum_collapses_branches(self):
        """At the optimum the three boundaries coincide and the rate is sqrt(beta)."""
        for mu, L in [(1, 9), (1, 100), (0.5, 3)]:
            hp = optimal_hyperparams(mu, L)
            a, b, c = branch_boundaries(mu, L, hp.beta)
            self.assertAlmostEqual(a, hp.gamma, places=12)
            self.assertAlmostEqual(b, hp.gamma, places=12)
            self.assertAlmostEqual(c, hp.gamma, places=12)
            self.assertAlmostEqual(m_discrete(hp.gamma, hp.beta, mu, L), optimal_discrete_rate(mu, L), places=15)

    def test_optimum_rate_to_working_precision(self):
        """Roundoff in the optimal pair must not push gamma off the sqrt(beta) plateau."""
        for mu, L in [(1, 4), (0.5, 3), (1, 9), (1, 100), (2, 50), (0.3, 7.7)]:
            with self.subTest(mu=mu, L=L):
                hp = optimal_hyperparams(mu, L)
                sk = math.sqrt(L / mu)
                self.assertAlmostEqual(m_discrete(hp.gamma, hp.beta, mu, L), (sk - 1) / (sk + 1), places=15)

    def test_optimum_minimizes_over_grid(self):
        mu, L = 1.0, 9.0
        best = optimal_discrete_rate(mu, L)
        for beta in np.linspace(0.05, 0.95, 19):
            bound = 2 * (1 + beta) / L
            for gamma in np.linspace(bound * 0.01, bound * 0.99, 50):
                self.assertGreaterEqual(m_discrete(gamma, beta, mu, L), best - 1e-12)

    def test_gd(self):
        self.assertAlmostEqual(gd_rate(9), 0.8, places=15)
        self.assertEqual(gd_rate(1), 0.0)
        self.assertAlmostEqual(gd_step(1, 9), 0.2, places=15)
        with self.assertRaises(InvalidSpecError):
            gd_rate(0.5)


class TestBlockEigenvalues(unittest.TestCase):
    """Test the 2x2 block eigenvalue formulas."""

    def test_continuous_blocks(self):
        z1, z2 = block_eigenvalues_continuous(1, 2)
        self.assertAlmostEqual(z1, -1)
        self.assertAlmostEqual(z2, -1)
        z1, z2 = block_eigenvalues_continuous(9, 2)
        self.assertAlmostEqual(z1, complex(-1, math.sqrt(8)))
        self.assertAlmostEqual(z2, complex(-1, -math.sqrt(8)))

    def test_discrete_blocks(self):
        z1, z2 = block_eigenvalues_discrete(1, 0.25, 0.25)
        self.assertAlmostEqual(z1, 0.5)
        self.assertAlmostEqual(z2, 0.5)
        z1, z2 = block_eigenvalues_discrete(9, 0.25, 0.25)
        self.assertAlmostEqual(z1, -0.5)
        self.assertAlmostEqual(z2, -0.5)

    def test_block_moduli_bounded_by_rate(self):
        """Every block eigenvalue with lambda in [mu, L] has modulus at most m(gamma, beta)."""
        mu, L = 1.0, 9.0
        lams = np.linspace(mu, L, 41)
        for beta in (0.1, 0.25, 0.5, 0.8):
            bound = 2 * (1 + beta) / L
            for gamma in np.linspace(bound * 0.02, bound * 0.98, 30):
                m = m_discrete(gamma, beta, mu, L)
                for lam in lams:
                    for z in block_eigenvalues_discrete(lam, gamma, beta):
                        self.assertLessEqual(abs(z), m + 1e-9)

    def test_continuous_rate_matches_slowest_block(self):
        for alpha in (0.5, 2.0, 3.0, 6.0):
            slowest = max(z.real for lam in (1.0, 4.0, 9.0) for z in block_eigenvalues_continuous(lam, alpha))
            self.assertAlmostEqual(-slowest, m_continuous(alpha, 1.0), places=12)


class TestPriorRates(unittest.TestCase):
    """Test the table of published ODE rates."""

    def test_table(self):
        rows = prior_ode_rates(1, 9)
        self.assertEqual(len(rows), 6)
        by_name = {row.assumption: row for row in rows}
        self.assertAlmostEqual(by_name['strongly convex'].rate, 2.0)
        self.assertAlmostEqual(by_name['PL'].rate, 2 * (3 - math.sqrt(8)), places=12)
        self.assertAlmostEqual(rows[-1].rate, 2.0)
        self.assertAlmostEqual(rows[-1].alpha, 2.0)
        self.assertTrue(all(row.rate <= rows[-1].rate + 1e-12 for row in rows))

    def test_pl_small_condition_number(self):
        pl = [row for row in prior_ode_rates(1, 1) if row.assumption == 'PL'][0]
        self.assertAlmostEqual(pl.rate, math.sqrt(2), places=12)
        self.assertAlmostEqual(pl.alpha, 6 / (2 * math.sqrt(2)), places=12)

    def test_fgap_rate(self):
        self.assertAlmostEqual(fgap_theory_rate(0.5, continuous=False), 0.25)
        self.assertAlmostEqual(fgap_theory_rate(1.0, continuous=True), 2.0)


if __name__ == '__main__':
    unittest.main()
