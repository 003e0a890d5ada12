import unittest

import numpy as np

from fluidprior.priors import GaussianBinner, fit_binner, fit_binners, quantize_value, dequantize_bin
from fluidprior.priors import target_distribution, standard_representatives
from fluidprior.priors import MmdKernel, mmd2, mmd_gradient
from fluidprior.quantum import LayeredAnsatz


class TestGaussianBinner(unittest.TestCase):
    def setUp(self):
        self.binner = GaussianBinner(mu=1.5, sigma=2.0)


    def test_mean_bin(self):
        self.assertEqual(quantize_value(self.binner, 1.5), 128)


    def test_clamped(self):
        self.assertEqual(self.binner.quantize(1e10), 255)
        self.assertEqual(self.binner.quantize(-1e10), 0)


    def test_representatives_round_trip(self):
        bins = np.arange(256)
        np.testing.assert_array_equal(self.binner.quantize(self.binner.dequantize(bins)), bins)


    def test_representatives_symmetric(self):
        representatives = standard_representatives()
        np.testing.assert_allclose(representatives, -representatives[::-1], atol=1e-12)
        self.assertAlmostEqual(dequantize_bin(self.binner, 0), 1.5 + 2*representatives[0])


    def test_dequantize_range(self):
        with self.assertRaises(ValueError):
            self.binner.dequantize(256)
        with self.assertRaises(ValueError):
            self.binner.dequantize([-1, 3])


    def test_non_finite(self):
        with self.assertRaises(ValueError):
            self.binner.quantize([0., np.nan])
        with self.assertRaises(ValueError):
            GaussianBinner(0., 0.)


    def test_equal_probability(self):
        values = np.random.default_rng(10).normal(1.5, 2.0, size=256000)
        counts = np.bincount(self.binner.quantize(values), minlength=256)

        # 1000 expected per bin
        self.assertLess(np.max(np.abs(counts - 1000)), 150)


    def test_target_distribution(self):
        values = np.random.default_rng(10).normal(1.5, 2.0, size=500)
        target = target_distribution(self.binner, values)

        self.assertEqual(target.shape, (256,))
        self.assertAlmostEqual(target.sum(), 1, places=14)
        self.assertTrue(np.all(target >= 0))

        with self.assertRaises(ValueError):
            target_distribution(self.binner, [])


    def test_small_bin_count(self):
        binner = GaussianBinner(0., 1., n_bins=8)
        self.assertEqual(binner.quantize([-5., 0.01, 5.]).tolist(), [0, 4, 7])



class TestFitBinner(unittest.TestCase):
    def test_fit(self):
        values = np.array([1., 2., 3., 4.])
        binner = fit_binner(values)

        self.assertEqual(binner.mu, 2.5)
        self.assertAlmostEqual(binner.sigma, np.std(values, ddof=1))


    def test_degenerate(self):
        with self.assertRaises(ValueError):
            fit_binner([2., 2., 2.])
        with self.assertRaises(ValueError):
            fit_binner([1.])


    def test_fit_binners(self):
        latents = np.random.default_rng(10).normal([0., 5.], [1., 0.1], size=(100, 2))
        binners = fit_binners(latents, n_bins=16)

        self.assertEqual(len(binners), 2)
        self.assertEqual(binners[1].n_bins, 16)
        self.assertAlmostEqual(binners[1].mu, latents[:, 1].mean())



class TestMmd(unittest.TestCase):
    def setUp(self):
        self.kernel = MmdKernel(n_bins=8)
        self.rng = np.random.default_rng(10)


    def test_gram(self):
        gram = self.kernel.gram

        self.assertEqual(gram.shape, (8, 8))
        np.testing.assert_allclose(np.diag(gram), 3.)
        np.testing.assert_allclose(gram, gram.T)
        self.assertTrue(np.all(np.linalg.eigvalsh(gram) > -1e-12))


    def test_bandwidths(self):
        with self.assertRaises(ValueError):
            MmdKernel(bandwidths=[])
        with self.assertRaises(ValueError):
            MmdKernel(bandwidths=[0.5, 0.])

        self.assertEqual(MmdKernel(bandwidths=[1.]).gram[0, 0], 1.)


    def test_mmd2(self):
        p = self.rng.dirichlet(np.ones(8))
        q = self.rng.dirichlet(np.ones(8))

        self.assertEqual(mmd2(p, p, self.kernel), 0.)
        self.assertGreater(mmd2(p, q, self.kernel), 0.)
        self.assertAlmostEqual(mmd2(p, q, self.kernel), mmd2(q, p, self.kernel), places=15)


    def test_gradient(self):
        ansatz = LayeredAnsatz(3, 2)
        params = self.rng.uniform(-np.pi, np.pi, ansatz.parameter_shape)
        q = self.rng.dirichlet(np.ones(8))

        loss, gradient = mmd_gradient(ansatz, params, q, self.kernel)
        self.assertEqual(gradient.shape, (2, 3))

        h = 1e-6
        for layer in range(2):
            for qubit in range(3):
                plus, minus = params.copy(), params.copy()
                plus[layer, qubit] += h
                minus[layer, qubit] -= h

                numeric = (mmd_gradient(ansatz, plus, q, self.kernel)[0]
                           - mmd_gradient(ansatz, minus, q, self.kernel)[0])/(2*h)
                self.assertAlmostEqual(gradient[layer, qubit], numeric, places=7)
