import unittest

import numpy as np

from fluidprior.exceptions import ShapeError
from fluidprior.quantum import StateVector, init_state, apply_ry, apply_cz, born_probabilities, sample
from fluidprior.quantum import LayeredAnsatz, run_ansatz, run_ansatz_batch, circuit_probabilities
from fluidprior.quantum import parameter_shift_jacobian


class TestStateVector(unittest.TestCase):
    def test_init_state(self):
        state = init_state(3)

        self.assertEqual(len(state), 8)
        self.assertEqual(state.n_qubits, 3)
        np.testing.assert_array_equal(state.real, [1, 0, 0, 0, 0, 0, 0, 0])
        np.testing.assert_array_equal(state.imag, 0)


    def test_init_state_batch(self):
        state = init_state(2, batch=3)
        self.assertTrue(state.batched)
        self.assertEqual(state.real.shape, (3, 4))


    def test_qubit_range(self):
        with self.assertRaises(ValueError):
            init_state(0)
        with self.assertRaises(ValueError):
            init_state(25)
        with self.assertRaises(ValueError):
            apply_ry(init_state(2), 2, 0.1)


    def test_not_power_of_two(self):
        with self.assertRaises(ValueError):
            StateVector(np.ones(3))


    def test_ry_flip(self):
        state = apply_ry(init_state(2), 1, np.pi)
        np.testing.assert_allclose(born_probabilities(state), [0, 0, 1, 0], atol=1e-15)


    def test_ry_single_qubit(self):
        theta = 0.7
        state = apply_ry(init_state(1), 0, theta)
        np.testing.assert_allclose(state.real, [np.cos(theta/2), np.sin(theta/2)], rtol=1e-15)


    def test_ry_batch_angles(self):
        state = apply_ry(init_state(1, batch=2), 0, np.array([0., np.pi]))
        np.testing.assert_allclose(born_probabilities(state), [[1, 0], [0, 1]], atol=1e-15)


    def test_cz(self):
        state = StateVector(np.full(4, 0.5))
        apply_cz(state, 0, 1)
        np.testing.assert_array_equal(state.real, [0.5, 0.5, 0.5, -0.5])

        with self.assertRaises(ValueError):
            apply_cz(state, 1, 1)


    def test_norm_preserved(self):
        rng = np.random.default_rng(10)
        state = init_state(4)
        for _ in range(5):
            for qubit in range(4):
                apply_ry(state, qubit, rng.uniform(-np.pi, np.pi))
            apply_cz(state, 0, 3)
            apply_cz(state, 1, 2)

        self.assertAlmostEqual(state.norm(), 1, places=12)
        self.assertAlmostEqual(born_probabilities(state).sum(), 1, places=12)


    def test_sample_deterministic(self):
        self.assertEqual(sample([0, 1, 0, 0], rng=1, count=5).tolist(), [1]*5)


    def test_sample_frequencies(self):
        p = np.array([0.1, 0.2, 0.3, 0.4])
        indices = sample(p, rng=np.random.default_rng(10), count=100000)

        frequencies = np.bincount(indices, minlength=4)/100000.
        np.testing.assert_allclose(frequencies, p, atol=0.01)


    def test_sample_seeded(self):
        p = np.full(8, 1/8.)
        np.testing.assert_array_equal(sample(p, rng=5, count=20), sample(p, rng=5, count=20))


    def test_sample_not_normalized(self):
        with self.assertRaises(ValueError):
            sample([0.5, 0.6])
        with self.assertRaises(ValueError):
            sample([])



class TestAnsatz(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(10)


    def test_pairs(self):
        self.assertEqual(LayeredAnsatz(1, 1).pairs, [])
        self.assertEqual(LayeredAnsatz(2, 1).pairs, [(0, 1)])
        self.assertEqual(LayeredAnsatz(4, 1).pairs, [(0, 1), (1, 2), (2, 3), (3, 0)])


    def test_parameter_shape(self):
        ansatz = LayeredAnsatz(8, 7)
        self.assertEqual(ansatz.parameter_shape, (7, 8))
        self.assertEqual(ansatz.n_parameters, 56)

        params = ansatz.initial_parameters(self.rng)
        self.assertTrue(np.all(np.abs(params) <= 0.1))

        with self.assertRaises(ShapeError):
            run_ansatz(ansatz, np.zeros((8, 7)))
        with self.assertRaises(ValueError):
            LayeredAnsatz(0, 3)


    def test_zero_angles(self):
        ansatz = LayeredAnsatz(3, 2)
        probabilities = circuit_probabilities(ansatz, np.zeros((2, 3)))
        np.testing.assert_allclose(probabilities, np.eye(8)[0], atol=1e-15)


    def test_single_qubit(self):
        ansatz = LayeredAnsatz(1, 2)
        probabilities = circuit_probabilities(ansatz, np.array([[0.3], [0.5]]))
        np.testing.assert_allclose(probabilities[1], np.sin(0.4)**2, rtol=1e-14)


    def test_prelude(self):
        ansatz = LayeredAnsatz(3, 1)
        probabilities = circuit_probabilities(ansatz, np.zeros((1, 3)), prelude=[0, 2])
        np.testing.assert_allclose(probabilities, np.eye(8)[5], atol=1e-15)


    def test_normalized(self):
        ansatz = LayeredAnsatz(5, 3)
        params = self.rng.uniform(-np.pi, np.pi, ansatz.parameter_shape)
        self.assertAlmostEqual(circuit_probabilities(ansatz, params).sum(), 1, places=12)


    def test_batch_matches_single(self):
        ansatz = LayeredAnsatz(4, 2)
        params = self.rng.uniform(-np.pi, np.pi, (3,) + ansatz.parameter_shape)
        preludes = [[0], [], [1, 3]]

        batch = born_probabilities(run_ansatz_batch(ansatz, params, preludes))

        for index in range(3):
            single = circuit_probabilities(ansatz, params[index], preludes[index])
            np.testing.assert_allclose(batch[index], single, atol=1e-14)


    def test_batch_prelude_count(self):
        ansatz = LayeredAnsatz(2, 1)
        with self.assertRaises(ShapeError):
            run_ansatz_batch(ansatz, np.zeros((2, 1, 2)), [[0], [1], [0]])


    def test_parameter_shift(self):
        ansatz = LayeredAnsatz(3, 2)
        params = self.rng.uniform(-np.pi, np.pi, ansatz.parameter_shape)
        prelude = [1]

        jacobian = parameter_shift_jacobian(ansatz, params, prelude)
        self.assertEqual(jacobian.shape, (8, 2, 3))

        h = 1e-6
        for layer in range(2):
            for qubit in range(3):
                plus, minus = params.copy(), params.copy()
                plus[layer, qubit] += h
                minus[layer, qubit] -= h
                numeric = (circuit_probabilities(ansatz, plus, prelude)
                           - circuit_probabilities(ansatz, minus, prelude))/(2*h)

                np.testing.assert_allclose(jacobian[:, layer, qubit], numeric, atol=1e-8)


    def test_jacobian_sums_to_zero(self):
        ansatz = LayeredAnsatz(4, 3)
        params = self.rng.uniform(-np.pi, np.pi, ansatz.parameter_shape)
        np.testing.assert_allclose(parameter_shift_jacobian(ansatz, params).sum(axis=0), 0, atol=1e-13)
