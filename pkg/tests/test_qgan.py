import unittest
import shutil
import os

import numpy as np

from fluidprior.autodiff import Tensor
from fluidprior.exceptions import ShapeError
from fluidprior.priors import QganModel, Discriminator, encode_noise, generator_distribution
from fluidprior.priors import generator_distributions, real_batch_distribution, discriminator_forward
from fluidprior.priors import fit_binners, sample_qgan, train_qgan
from fluidprior.priors.qgan import marginalize_ancillas, generator_jacobian
from fluidprior.quantum import LayeredAnsatz, circuit_probabilities, sample


def small_qgan(seed=10, **kwargs):
    return QganModel(n_data=3, n_ancilla=1, n_layers=2, epochs=1, batch_size=16,
                     hidden=(8,), seed=seed, logger_level="error", **kwargs)


def gaussian_latents(count=64, seed=10):
    return np.random.default_rng(seed).normal([0., 1.], [1., 0.3], size=(count, 2))


class TestGenerator(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(10)
        self.ansatz = LayeredAnsatz(4, 2)


    def test_encode_noise(self):
        self.assertEqual(encode_noise(0, 3), [])
        self.assertEqual(encode_noise(5, 3), [0, 2])
        self.assertEqual(encode_noise(255), list(range(8)))

        with self.assertRaises(ValueError):
            encode_noise(8, 3)


    def test_marginalize(self):
        full = np.arange(16.)/120.
        marginal = marginalize_ancillas(full, n_data=3)

        np.testing.assert_allclose(marginal, (np.arange(8.) + np.arange(8., 16.))/120.)


    def test_generator_distribution(self):
        params = self.rng.uniform(-np.pi, np.pi, self.ansatz.parameter_shape)

        distribution = generator_distribution(self.ansatz, params, 5, n_data=3)
        full = circuit_probabilities(self.ansatz, params, prelude=[0, 2])

        self.assertEqual(distribution.shape, (8,))
        self.assertAlmostEqual(distribution.sum(), 1, places=12)
        np.testing.assert_allclose(distribution, full[:8] + full[8:], atol=1e-14)


    def test_batched_distributions(self):
        params = self.rng.uniform(-np.pi, np.pi, (3,) + self.ansatz.parameter_shape)
        noise = [1, 6, 3]

        batch = generator_distributions(self.ansatz, params, noise, n_data=3)

        for index in range(3):
            np.testing.assert_allclose(batch[index],
                                       generator_distribution(self.ansatz, params[index], noise[index], n_data=3),
                                       atol=1e-14)


    def test_generator_jacobian(self):
        params = self.rng.uniform(-np.pi, np.pi, self.ansatz.parameter_shape)
        jacobian = generator_jacobian(self.ansatz, params, 3, n_data=3)
        self.assertEqual(jacobian.shape, (8, 2, 4))

        h = 1e-6
        plus, minus = params.copy(), params.copy()
        plus[1, 2] += h
        minus[1, 2] -= h
        numeric = (generator_distribution(self.ansatz, plus, 3, n_data=3)
                   - generator_distribution(self.ansatz, minus, 3, n_data=3))/(2*h)

        np.testing.assert_allclose(jacobian[:, 1, 2], numeric, atol=1e-8)


    def test_real_batch_distribution(self):
        latents = gaussian_latents()
        binners = fit_binners(latents, n_bins=8)

        matrix = real_batch_distribution(latents[:10], binners)

        self.assertEqual(matrix.shape, (2, 8))
        np.testing.assert_allclose(matrix.sum(axis=1), 1)
        self.assertTrue(np.all(matrix*10 == np.round(matrix*10)))

        with self.assertRaises(ShapeError):
            real_batch_distribution(latents[:, :1], binners)
        with self.assertRaises(ValueError):
            real_batch_distribution(np.zeros((0, 2)), binners)



class TestDiscriminator(unittest.TestCase):
    def test_forward(self):
        discriminator = Discriminator(n_inputs=16, hidden=(8, 4), rng=1)

        probability = discriminator_forward(discriminator, np.full((2, 8), 1/8.))

        self.assertTrue(0 < probability < 1)
        self.assertEqual(discriminator(Tensor(np.zeros((3, 16)))).shape, (3, 1))


    def test_shape(self):
        discriminator = Discriminator(n_inputs=16, hidden=(8,), rng=1)

        with self.assertRaises(ShapeError):
            discriminator_forward(discriminator, np.zeros((3, 8)))
        with self.assertRaises(ValueError):
            discriminator_forward(discriminator, np.full((2, 8), np.nan))


    def test_default_layers(self):
        discriminator = Discriminator(hidden=(4,), rng=1)
        self.assertEqual(discriminator.network.layers[0].weight.shape, (4, 7*256))



class TestQganModel(unittest.TestCase):
    def setUp(self):
        self.output_test_dir = ".tests/"

        if os.path.isdir(self.output_test_dir):
            shutil.rmtree(self.output_test_dir)
        os.makedirs(self.output_test_dir)

        self.latents = gaussian_latents()
        self.model = small_qgan()
        self.model.train(self.latents)


    def tearDown(self):
        if os.path.isdir(self.output_test_dir):
            shutil.rmtree(self.output_test_dir)


    def test_train(self):
        self.assertEqual(self.model.params.shape, (2, 2, 4))
        self.assertEqual(list(self.model.history.keys()), ["d_loss", "g_loss", "d_real", "d_fake"])

        # one entry per batch, 64/16 batches in one epoch
        for curve in self.model.history.values():
            self.assertEqual(len(curve), 4)
            self.assertTrue(np.all(np.isfinite(curve)))


    def test_history_length_partial_batch(self):
        model = small_qgan()
        model.train(self.latents[:40])
        self.assertEqual(len(model.history["d_loss"]), 3)


    def test_generator_gradient(self):
        noise = [2, 5]
        _, gradient, _ = self.model.generator_loss(noise)

        h = 1e-6
        for index in [(0, 0, 1), (1, 1, 3)]:
            original = self.model.params[index]
            self.model.params[index] = original + h
            plus = self.model.generator_loss(noise)[0]
            self.model.params[index] = original - h
            minus = self.model.generator_loss(noise)[0]
            self.model.params[index] = original

            self.assertAlmostEqual(gradient[index], (plus - minus)/(2*h), places=6)


    def test_noise_table(self):
        table = self.model.noise_table()

        self.assertEqual(table.shape, (2, 8, 8))
        np.testing.assert_allclose(table.sum(axis=-1), 1, rtol=1e-12)
        np.testing.assert_allclose(table[1, 6], generator_distribution(self.model.ansatz, self.model.params[1], 6, 3),
                                   atol=1e-14)


    def test_sample(self):
        samples = self.model.sample(200, seed=4)

        self.assertEqual(samples.shape, (200, 2))
        for dimension, binner in enumerate(self.model.binners):
            self.assertTrue(np.all(np.isin(samples[:, dimension], binner.representatives)))

        np.testing.assert_array_equal(samples, self.model.sample(200, seed=4))
        self.assertEqual(sample_qgan(self.model, 1).shape, (2,))


    def test_sample_follows_noise_table(self):
        samples = self.model.sample(50, seed=7)

        rng = np.random.default_rng(7)
        table = self.model.noise_table()
        noise = rng.integers(8, size=(50, 2))
        for dimension, binner in enumerate(self.model.binners):
            expected = np.empty(50, dtype=int)
            for b in np.unique(noise[:, dimension]):
                rows = np.flatnonzero(noise[:, dimension] == b)
                p = table[dimension, b]
                expected[rows] = sample(p/p.sum(), rng, len(rows))

            np.testing.assert_array_equal(samples[:, dimension], binner.dequantize(expected))


    def test_deterministic(self):
        other = small_qgan()
        other.train(self.latents)

        np.testing.assert_array_equal(other.params, self.model.params)
        self.assertEqual(other.history["g_loss"], self.model.history["g_loss"])


    def test_save_load(self):
        filename = os.path.join(self.output_test_dir, "qgan.flp")
        self.model.save(filename)

        loaded = QganModel.load(filename, logger_level="error")

        self.assertEqual(loaded.n_data, 3)
        self.assertEqual(loaded.ansatz.n_qubits, 4)
        self.assertEqual(loaded.hidden, (8,))
        np.testing.assert_array_equal(loaded.params, self.model.params)
        np.testing.assert_array_equal(loaded.sample(30, seed=2), self.model.sample(30, seed=2))

        matrix = np.full((2, 8), 1/8.)
        self.assertEqual(discriminator_forward(loaded.discriminator, matrix),
                         discriminator_forward(self.model.discriminator, matrix))


    def test_train_qgan(self):
        model, history = train_qgan(self.latents[:32], epochs=2, batch_size=16, seed=1, logger_level="error",
                                    n_data=2, n_ancilla=1, n_layers=1, hidden=(4,))
        self.assertEqual(len(history["g_loss"]), 4)
        self.assertEqual(model.noise_table().shape, (2, 4, 4))


    def test_untrained(self):
        with self.assertRaises(RuntimeError):
            small_qgan().sample(3)
