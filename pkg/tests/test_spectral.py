"""Unit tests for the eigensolvers and the spectral reports."""

import math
import unittest

import numpy as np

from hb_lab.lab.linalg import eig2x2, eigvals, jacobi_eigh, spectral_abscissa, spectral_radius
from hb_lab.lab.model import DimensionError, InvalidSpecError
from hb_lab.lab.rates import (
    block_eigenvalues_discrete,
    continuous_system_matrix,
    discrete_system_matrix,
    m_continuous,
    optimal_hyperparams,
    spectral_report_continuous,
    spectral_report_discrete,
)


def assert_same_spectrum(test, got, want, tol):
    """Each eigenvalue of ``got`` is matched by a distinct one of ``want``."""
    want = list(want)
    test.assertEqual(len(got), len(want))
    for z in got:
        dists = [abs(z - w) for w in want]
        k = int(np.argmin(dists))
        test.assertLess(dists[k], tol, msg=f'{z} not in {want}')
        want.pop(k)


def random_symmetric(rng, eigs):
    q, _ = np.linalg.qr(rng.standard_normal((len(eigs), len(eigs))))
    h = (q * eigs) @ q.T
    return 0.5 * (h + h.T)


class TestEigenSolvers(unittest.TestCase):
    """Test the Jacobi and shifted QR eigensolvers."""

    def test_identity(self):
        self.assertEqual(spectral_radius(np.eye(3)), 1.0)
        self.assertEqual(spectral_abscissa(np.eye(3)), 1.0)

    def test_eig2x2(self):
        z1, z2 = eig2x2(0.0, -1.0, 1.0, 0.0)
        self.assertEqual({z1, z2}, {1j, -1j})
        z1, z2 = eig2x2(-1.0, 1.0, 0.0, -1.0)
        self.assertEqual((z1, z2), (-1 + 0j, -1 + 0j))

    def test_general_matrix(self):
        rng = np.random.default_rng(4)
        for n in (3, 6, 10):
            a = rng.standard_normal((n, n))
            assert_same_spectrum(self, eigvals(a), np.linalg.eigvals(a), 1e-8)

    def test_complex_matrix(self):
        rng = np.random.default_rng(5)
        a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        assert_same_spectrum(self, eigvals(a), np.linalg.eigvals(a), 1e-8)

    def test_companion_matrix(self):
        """Roots of (z - 1)(z - 2)(z - 3)(z - 4) from its companion matrix."""
        coeffs = np.poly([1, 2, 3, 4])
        a = np.zeros((4, 4))
        a[0, :] = -coeffs[1:]
        a[1:, :-1] = np.eye(3)
        assert_same_spectrum(self, eigvals(a), [1, 2, 3, 4], 1e-8)

    def test_triangular_blocks(self):
        """Jordan-like structure is split into exact closed-form blocks."""
        a = np.array([[-1.0, 1.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 2.0]])
        np.testing.assert_array_equal(np.sort_complex(eigvals(a)), [-1, -1, 2])

    def test_rejects_bad_input(self):
        with self.assertRaises(DimensionError):
            eigvals(np.ones((2, 3)))
        with self.assertRaises(DimensionError):
            eigvals(np.eye(65))
        with self.assertRaises(DimensionError):
            eigvals(np.array([[np.nan]]))
        with self.assertRaises(DimensionError):
            jacobi_eigh(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_jacobi(self):
        rng = np.random.default_rng(6)
        for n in (1, 2, 5, 12):
            eigs = np.sort(rng.uniform(-5, 5, n))
            h = random_symmetric(rng, eigs)
            lam, v = jacobi_eigh(h)
            np.testing.assert_allclose(lam, np.linalg.eigvalsh(h), atol=1e-10)
            np.testing.assert_allclose(v.T @ v, np.eye(n), atol=1e-10)
            np.testing.assert_allclose(h @ v, v * lam, atol=1e-9)


class TestSystemMatrices(unittest.TestCase):
    """Test the linearized system matrices against the block formulas."""

    def test_continuous_examples(self):
        a = continuous_system_matrix([[1.0]], 0, 3.0)
        self.assertAlmostEqual(spectral_abscissa(a), -0.5 * (3 - math.sqrt(5)), places=12)
        assert_same_spectrum(self, eigvals(continuous_system_matrix([[1.0]], 0, 2.0)), [-1, -1], 1e-12)
        h = np.diag([1.0, 9.0])
        expected = [-1, -1, complex(-1, math.sqrt(8)), complex(-1, -math.sqrt(8))]
        assert_same_spectrum(self, eigvals(continuous_system_matrix(h, 0, 2.0)), expected, 1e-12)

    def test_tangential_block(self):
        a = continuous_system_matrix([[1.0]], 1, 3.0)
        self.assertEqual(a.shape, (3, 3))
        assert_same_spectrum(self, eigvals(a), [-3, -0.5 * (3 - math.sqrt(5)), -0.5 * (3 + math.sqrt(5))], 1e-12)
        b = discrete_system_matrix([[1.0]], 2, 0.25, 0.25)
        self.assertEqual(b.shape, (4, 4))
        assert_same_spectrum(self, eigvals(b), [0.5, 0.5, 0.25, 0.25], 1e-12)

    def test_discrete_examples(self):
        assert_same_spectrum(self, eigvals(discrete_system_matrix([[1.0]], 0, 0.25, 0.25)), [0.5, 0.5], 1e-12)
        assert_same_spectrum(self, eigvals(discrete_system_matrix([[9.0]], 0, 0.25, 0.25)), [-0.5, -0.5], 1e-12)

    def test_optimal_radius(self):
        """Optimal hyperparameters on diag(1, 9) give spectral radius 1/2."""
        hp = optimal_hyperparams(1, 9)
        a = discrete_system_matrix(np.diag([1.0, 9.0]), 0, hp.gamma, hp.beta)
        self.assertLess(abs(spectral_radius(a) - 0.5), 1e-9)

    def test_invalid(self):
        with self.assertRaises(DimensionError):
            continuous_system_matrix([[1.0, 2.0], [0.0, 1.0]], 0, 1.0)
        with self.assertRaises(DimensionError):
            discrete_system_matrix([[1.0]], -1, 0.1, 0.5)
        with self.assertRaises(InvalidSpecError):
            discrete_system_matrix([[1.0]], 0, 0.1, 1.0)

    def test_random_hessians(self):
        """QR radius and abscissa match the block formulas on 100 random Hessians."""
        rng = np.random.default_rng(7)
        for _ in range(100):
            d_n = int(rng.integers(1, 5))
            d_t = int(rng.integers(0, 3))
            lams = np.sort(rng.uniform(1, 9, d_n))
            h = random_symmetric(rng, lams)
            beta = rng.uniform(0.05, 0.95)
            gamma = rng.uniform(0.01, 0.99) * 2 * (1 + beta) / lams[-1]
            moduli = [abs(z) for lam in lams for z in block_eigenvalues_discrete(lam, gamma, beta)]
            closed = max(moduli + ([beta] if d_t else []))
            rho = spectral_radius(discrete_system_matrix(h, d_t, gamma, beta))
            self.assertLess(abs(rho - closed), 1e-9)

            alpha = rng.uniform(0.2, 8.0)
            expected = -m_continuous(alpha, lams[0])
            if d_t:
                expected = max(expected, -alpha)
            self.assertLess(abs(spectral_abscissa(continuous_system_matrix(h, d_t, alpha)) - expected), 1e-9)


class TestSpectralReports(unittest.TestCase):
    """Test spectral_report_discrete and spectral_report_continuous."""

    def test_discrete_report(self):
        report = spectral_report_discrete(np.diag([1.0, 9.0]), 1, 0.25, 0.25)
        self.assertEqual(report.kind, 'discrete')
        self.assertEqual(len(report.eigenvalues), 5)
        self.assertAlmostEqual(report.rho, 0.5, places=9)
        self.assertAlmostEqual(report.closed_form, 0.5, places=12)
        self.assertAlmostEqual(report.theory_rate, 0.5, places=12)
        self.assertLess(report.max_abs_discrepancy, 1e-9)

    def test_discrete_report_outside_stability(self):
        report = spectral_report_discrete(np.diag([1.0, 9.0]), 0, 0.3, 0.25)
        self.assertIsNone(report.theory_rate)
        self.assertGreater(report.rho, 1.0)

    def test_continuous_report(self):
        report = spectral_report_continuous(np.diag([1.0, 9.0]), 1, 2.0)
        self.assertAlmostEqual(report.abscissa, -1.0, places=9)
        self.assertAlmostEqual(report.theory_rate, 1.0, places=12)
        self.assertEqual(len(report.as_complex), 5)


if __name__ == '__main__':
    unittest.main()
