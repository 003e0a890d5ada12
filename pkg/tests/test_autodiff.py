import unittest
import warnings
import shutil
import os

import numpy as np

from fluidprior.autodiff import Tensor, Graph, backward, ops
from fluidprior.autodiff import Linear, Conv2d, ConvTranspose2d, BatchNorm, Sequential
from fluidprior.autodiff import Adam, AdamState, adam_step, gradient_check
from fluidprior.autodiff import save_checkpoint, load_checkpoint
from fluidprior.exceptions import UsageError, ShapeError, NumericalError, FileFormatError


class TestGraph(unittest.TestCase):
    def test_backward(self):
        a = Tensor([1., 2., 3.], requires_grad=True)
        b = Tensor([4., 5., 6.], requires_grad=True)

        with Graph() as graph:
            loss = ops.sum(a*b + a)
        graph.backward(loss)

        np.testing.assert_array_equal(a.grad, [5., 6., 7.])
        np.testing.assert_array_equal(b.grad, [1., 2., 3.])


    def test_shared_subexpression(self):
        a = Tensor(3., requires_grad=True)

        with Graph() as graph:
            b = a*a
            loss = b*b
        graph.backward(loss)

        self.assertAlmostEqual(a.grad.item(), 4*27.)


    def test_backward_twice(self):
        a = Tensor([1., 2.], requires_grad=True)
        with Graph() as graph:
            loss = ops.sum(a*a)
        graph.backward(loss)

        with self.assertRaises(UsageError):
            graph.backward(loss)


    def test_backward_before_forward(self):
        graph = Graph()
        with self.assertRaises(UsageError):
            graph.backward(Tensor(1.))


    def test_backward_not_scalar(self):
        a = Tensor([1., 2.], requires_grad=True)
        with Graph() as graph:
            loss = a*a
        with self.assertRaises(UsageError):
            graph.backward(loss)


    def test_no_graph_no_tape(self):
        a = Tensor([1., 2.], requires_grad=True)
        result = ops.sum(a*a)
        self.assertIsNone(result.graph)
        self.assertEqual(result.item(), 5.)


    def test_stop_gradient(self):
        a = Tensor([1., 2.], requires_grad=True)
        b = Tensor([3., 4.], requires_grad=True)

        with Graph() as graph:
            loss = ops.sum(ops.stop_gradient(a)*b)
        grads = backward(graph, loss, [a, b])

        np.testing.assert_array_equal(grads[0], [0., 0.])
        np.testing.assert_array_equal(grads[1], [1., 2.])


    def test_gather_rows(self):
        table = Tensor(np.arange(6.).reshape(3, 2), requires_grad=True)

        with Graph() as graph:
            loss = ops.sum(ops.gather_rows(table, [2, 0, 2]))
        graph.backward(loss)

        np.testing.assert_array_equal(table.grad, [[1., 1.], [0., 0.], [2., 2.]])


    def test_broadcast_shape_error(self):
        with self.assertRaises(ShapeError):
            ops.add(Tensor(np.ones((2, 3))), Tensor(np.ones((4,))))


    def test_mse_shape_error(self):
        with self.assertRaises(ShapeError):
            ops.mse_loss(Tensor(np.ones(3)), Tensor(np.ones(4)))


    def test_bce_saturated(self):
        loss = ops.bce_loss(Tensor([1.0, 0.0]), Tensor([0.0, 1.0]))
        self.assertTrue(np.isfinite(loss.item()))
        self.assertAlmostEqual(loss.item(), -np.log(1e-12), places=3)



class TestGradients(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(10)


    def test_elementwise(self):
        x = Tensor(self.rng.standard_normal((3, 4)), requires_grad=True, name="x")
        y = Tensor(self.rng.standard_normal((4,)), requires_grad=True, name="y")

        def loss():
            return ops.mean(ops.tanh(x*y) + ops.sigmoid(x - y))

        self.assertTrue(gradient_check(loss, [x, y]).passed(1e-6))


    def test_single_element_loss(self):
        x = Tensor([0.7], requires_grad=True)

        with warnings.catch_warnings():
            warnings.simplefilter("error")
            report = gradient_check(lambda: x*x*x, [x])

        self.assertTrue(report.passed(1e-6))


    def test_relu(self):
        data = self.rng.standard_normal((4, 5))
        data = np.where(np.abs(data) < 0.1, 0.5, data)
        x = Tensor(data, requires_grad=True)

        self.assertTrue(gradient_check(lambda: ops.sum(ops.relu(x)*x), [x]).passed(1e-6))


    def test_matmul_reshape(self):
        a = Tensor(self.rng.standard_normal((3, 4)), requires_grad=True)
        b = Tensor(self.rng.standard_normal((4, 2)), requires_grad=True)

        def loss():
            return ops.sum(ops.reshape(a @ b, (6,))*np.arange(6.))

        self.assertTrue(gradient_check(loss, [a, b]).passed(1e-6))


    def test_linear(self):
        layer = Linear(5, 3, rng=self.rng)
        x = Tensor(self.rng.standard_normal((4, 5)), requires_grad=True, name="x")
        target = self.rng.standard_normal((4, 3))

        report = gradient_check(lambda: ops.mse_loss(layer(x), target), layer.parameters() + [x])

        self.assertEqual(list(report.keys()), ["weight", "bias", "x"])
        self.assertTrue(report.passed(1e-6))


    def test_conv2d(self):
        layer = Conv2d(2, 3, 4, rng=self.rng, stride=2, pad=1)
        x = Tensor(self.rng.standard_normal((2, 2, 8, 6)), requires_grad=True, name="x")
        target = self.rng.standard_normal((2, 3, 4, 3))

        self.assertTrue(gradient_check(lambda: ops.mse_loss(layer(x), target), layer.parameters() + [x]).passed(1e-4))


    def test_conv_transpose2d(self):
        layer = ConvTranspose2d(3, 2, 4, rng=self.rng, stride=2, pad=1)
        x = Tensor(self.rng.standard_normal((2, 3, 4, 3)), requires_grad=True, name="x")
        target = self.rng.standard_normal((2, 2, 8, 6))

        self.assertEqual(layer(x).shape, (2, 2, 8, 6))
        self.assertTrue(gradient_check(lambda: ops.mse_loss(layer(x), target), layer.parameters() + [x]).passed(1e-4))


    def test_conv_transpose_adjoint(self):
        weight = self.rng.standard_normal((3, 2, 4, 4))
        x = self.rng.standard_normal((1, 2, 8, 6))
        y = self.rng.standard_normal((1, 3, 4, 3))

        forward = ops.conv2d(Tensor(x), Tensor(weight), stride=2, pad=1).data
        adjoint = ops.conv_transpose2d(Tensor(y), Tensor(weight), stride=2, pad=1).data

        self.assertAlmostEqual(np.sum(forward*y), np.sum(x*adjoint), places=10)


    def test_batch_norm(self):
        layer = BatchNorm(3)
        layer.gamma.data[...] = [0.5, 1.5, 2.0]
        x = Tensor(self.rng.standard_normal((4, 3, 2, 2)), requires_grad=True, name="x")
        target = self.rng.standard_normal((4, 3, 2, 2))

        self.assertTrue(gradient_check(lambda: ops.mse_loss(layer(x), target), layer.parameters() + [x]).passed(1e-4))


    def test_batch_norm_eval(self):
        layer = BatchNorm(2)
        x = Tensor(self.rng.standard_normal((5, 2)), requires_grad=True, name="x")
        target = self.rng.standard_normal((5, 2))

        layer(x)
        layer.eval()
        self.assertTrue(gradient_check(lambda: ops.mse_loss(layer(x), target), layer.parameters() + [x]).passed(1e-6))


    def test_batch_norm_running_stats(self):
        layer = BatchNorm(2, momentum=0.1)
        data = self.rng.standard_normal((6, 2)) + [1., -2.]

        layer(Tensor(data))

        np.testing.assert_allclose(layer.running_mean, 0.1*data.mean(axis=0))
        np.testing.assert_allclose(layer.running_var, 0.9 + 0.1*data.var(axis=0, ddof=1))


    def test_bce(self):
        logits = Tensor(self.rng.standard_normal(6), requires_grad=True)
        target = (self.rng.random(6) > 0.5).astype(float)

        self.assertTrue(gradient_check(lambda: ops.bce_loss(ops.sigmoid(logits), target), [logits]).passed(1e-6))


    def test_sequential(self):
        network = Sequential(Linear(3, 4, rng=self.rng), ops.tanh, Linear(4, 1, rng=self.rng))

        names = [name for name, _ in network.named_parameters()]
        self.assertEqual(names, ["0.weight", "0.bias", "2.weight", "2.bias"])

        x = self.rng.standard_normal((5, 3))
        self.assertTrue(gradient_check(lambda: ops.mean(network(x)), network.parameters()).passed(1e-6))



class TestAdam(unittest.TestCase):
    def test_first_step(self):
        param = np.array([1.0, -1.0])
        state = AdamState([param.shape], lr=0.1)

        adam_step([param], [np.array([0.5, -2.0])], state)

        # The bias corrected first step moves each entry by lr
        np.testing.assert_allclose(param, [0.9, -0.9], rtol=1e-6)
        self.assertEqual(state.step, 1)


    def test_non_finite_rejected(self):
        param = np.array([1.0, 2.0])
        state = AdamState([param.shape])

        with self.assertRaises(NumericalError):
            adam_step([param], [np.array([np.nan, 1.0])], state)

        np.testing.assert_array_equal(param, [1.0, 2.0])
        self.assertEqual(state.step, 0)
        np.testing.assert_array_equal(state.m[0], 0)


    def test_shape_mismatch(self):
        with self.assertRaises(ValueError):
            adam_step([np.zeros(2)], [np.zeros(3)], AdamState([(2,)]))


    def test_quadratic(self):
        x = Tensor([3.0, -2.0], requires_grad=True)
        optimizer = Adam([x], lr=0.1)

        for _ in range(500):
            with Graph() as graph:
                loss = ops.sum(x*x)
            graph.backward(loss)
            optimizer.step()

        self.assertLess(np.max(np.abs(x.data)), 1e-2)
        self.assertIsNone(x.grad)



class TestCheckpoint(unittest.TestCase):
    def setUp(self):
        self.output_test_dir = ".tests/"
        self.filename = os.path.join(self.output_test_dir, "model.flp")

        if os.path.isdir(self.output_test_dir):
            shutil.rmtree(self.output_test_dir)
        os.makedirs(self.output_test_dir)


    def tearDown(self):
        if os.path.isdir(self.output_test_dir):
            shutil.rmtree(self.output_test_dir)


    def test_round_trip(self):
        rng = np.random.default_rng(10)
        blocks = {"encoder.0.weight": rng.standard_normal((2, 3, 4, 4)),
                  "scalar": np.array(3.5),
                  "ünïcode": np.arange(4.)}

        save_checkpoint(self.filename, blocks)
        result = load_checkpoint(self.filename)

        self.assertEqual(list(result.keys()), list(blocks.keys()))
        for name in blocks:
            self.assertEqual(result[name].shape, blocks[name].shape)
            self.assertEqual(result[name].tobytes(), blocks[name].tobytes())


    def test_state_dict(self):
        rng = np.random.default_rng(10)
        network = Sequential(Linear(3, 4, rng=rng), BatchNorm(4))
        network(Tensor(rng.standard_normal((5, 3))))

        save_checkpoint(self.filename, network.state_dict())

        other = Sequential(Linear(3, 4, rng=np.random.default_rng(1)), BatchNorm(4))
        other.load_state_dict(load_checkpoint(self.filename))

        for name, value in network.state_dict().items():
            np.testing.assert_array_equal(other.state_dict()[name], value)


    def test_load_state_missing(self):
        network = Linear(3, 4, rng=np.random.default_rng(1))
        with self.assertRaises(KeyError):
            network.load_state_dict({"weight": np.zeros((4, 3))})
        with self.assertRaises(ValueError):
            network.load_state_dict({"weight": np.zeros((3, 4)), "bias": np.zeros(4)})


    def test_bad_magic(self):
        save_checkpoint(self.filename, {"a": np.ones(3)})
        with open(self.filename, "r+b") as f:
            f.write(b"FLQ1")

        with self.assertRaises(FileFormatError):
            load_checkpoint(self.filename)


    def test_truncated(self):
        save_checkpoint(self.filename, {"a": np.ones(3)})
        with open(self.filename, "rb") as f:
            content = f.read()
        with open(self.filename, "wb") as f:
            f.write(content[:-4])

        with self.assertRaises(FileFormatError) as context:
            load_checkpoint(self.filename)
        self.assertIn("truncated", str(context.exception))


    def test_trailing(self):
        save_checkpoint(self.filename, {"a": np.ones(3)})
        with open(self.filename, "ab") as f:
            f.write(b"\x00")

        with self.assertRaises(FileFormatError):
            load_checkpoint(self.filename)
