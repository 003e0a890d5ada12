from __future__ import absolute_import, division, print_function, unicode_literals

from collections import namedtuple, OrderedDict

import numpy as np
from tqdm import tqdm

from .base import Prior
from .binner import fit_binners, binner_blocks, binners_from_block
from ..autodiff import Tensor, Graph, Module, Linear, Sequential, Adam, AdamState, adam_step
from ..autodiff import ops, save_checkpoint, load_checkpoint
from ..exceptions import NumericalError, ShapeError
from ..quantum import LayeredAnsatz, born_probabilities, run_ansatz_batch, parameter_shift_jacobian
from ..quantum import sample as sample_bins
from ..utils.utility import check_finite, make_rng


AdversarialBatchReport = namedtuple("AdversarialBatchReport", ["d_loss", "g_loss", "d_real_mean", "d_fake_mean"])


def encode_noise(b, n_data=8):
    """
    Basis-state preparation of the noise bin `b`: the data qubits whose bit
    is set in `b`, each to be flipped with ``Ry(pi)``.
    """
    b = int(b)
    if not 0 <= b < 2**n_data:
        raise ValueError("noise bin {} out of range 0..{}".format(b, 2**n_data - 1))
    return [qubit for qubit in range(n_data) if (b >> qubit) & 1]


def marginalize_ancillas(probabilities, n_data=8):
    """
    Sum out the ancilla qubits, which are the high bits of the basis index:
    ``p(d) = sum_a p_full(a*2**n_data + d)``. Works on the leading axis
    after moving it last, so Jacobians can be marginalized too.
    """
    probabilities = np.asarray(probabilities)
    return probabilities.reshape(probabilities.shape[:-1] + (-1, 2**n_data)).sum(axis=-2)


def generator_distributions(ansatz, params, noise, n_data=8):
    """
    Marginal data distributions of several generator circuits at once.

    Parameters
    ----------
    ansatz : LayeredAnsatz
    params : array
        Angles per circuit, shape (C, n_layers, n_qubits).
    noise : sequence of int
        One noise bin per circuit.

    Returns
    -------
    distributions : array
        Shape (C, 2**n_data).
    """
    preludes = [encode_noise(b, n_data) for b in noise]
    state = run_ansatz_batch(ansatz, params, preludes)
    return marginalize_ancillas(born_probabilities(state), n_data)


def generator_distribution(ansatz, params, b, n_data=8):
    """Marginal data distribution of one generator circuit for noise bin `b`."""
    return generator_distributions(ansatz, np.asarray(params)[None], [b], n_data)[0]


def generator_jacobian(ansatz, params, b, n_data=8):
    """Parameter-shift Jacobian of the marginal distribution, shape (2**n_data, n_layers, n_qubits)."""
    jacobian = parameter_shift_jacobian(ansatz, params, encode_noise(b, n_data))
    return np.moveaxis(marginalize_ancillas(np.moveaxis(jacobian, 0, -1), n_data), -1, 0)


def real_batch_distribution(batch, binners):
    """
    Per-dimension normalized histograms of a batch of latent vectors.

    Returns
    -------
    matrix : array
        Shape (dimension, n_bins).
    """
    batch = np.asarray(batch, dtype=np.float64)
    if batch.ndim != 2 or len(batch) == 0:
        raise ValueError("real batch must be a nonempty N × D array, got shape {}".format(batch.shape))
    if batch.shape[1] != len(binners):
        raise ShapeError("batch has {} dimensions but there are {} binners".format(batch.shape[1], len(binners)))

    return np.array([np.bincount(binner.quantize(batch[:, dimension]), minlength=binner.n_bins)/len(batch)
                     for dimension, binner in enumerate(binners)])



class Discriminator(Module):
    """
    Feedforward classifier of flattened ``dimension × n_bins`` distribution
    matrices: ReLU hidden layers and a sigmoid output.

    Parameters
    ----------
    n_inputs : int, optional
        Default is 7*256.
    hidden : tuple, optional
        Hidden widths. Default is (512, 128).
    rng : {Generator, int, None}, optional
    """
    def __init__(self, n_inputs=7*256, hidden=(512, 128), rng=None):
        super(Discriminator, self).__init__()

        rng = make_rng(rng)
        self.n_inputs = n_inputs
        self.hidden = tuple(hidden)

        layers = []
        width = n_inputs
        for size in self.hidden:
            layers.extend([Linear(width, size, rng), ops.relu])
            width = size
        layers.extend([Linear(width, 1, rng), ops.sigmoid])
        self.network = Sequential(*layers)


    def forward(self, x):
        x = ops.as_tensor(x)
        if x.ndim != 2:
            x = ops.reshape(x, (-1, self.n_inputs))
        if x.shape[1] != self.n_inputs:
            raise ShapeError("discriminator expects {} inputs, got shape {}".format(self.n_inputs, x.shape))
        return self.network(x)



def discriminator_forward(discriminator, matrix):
    """
    Probability that `matrix` is a real distribution matrix.

    Raises
    ------
    ShapeError
        If the matrix does not flatten to the discriminator input size.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.size != discriminator.n_inputs:
        raise ShapeError("discriminator expects {} inputs, got shape {}".format(discriminator.n_inputs, matrix.shape))
    if not np.all(np.isfinite(matrix)):
        raise ValueError("discriminator input must be finite")
    return discriminator(matrix.reshape(1, -1)).item()



class QganModel(Prior):
    """
    Hybrid quantum GAN over the latent space.

    One generator circuit per latent dimension maps a noise bin, prepared as
    a basis state on the data qubits, to a distribution over the bins of that
    dimension; the ancilla qubits are summed out. The classical
    discriminator sees the stacked distributions of all dimensions: per-batch
    histograms of real latents against exact generator distributions.

    Parameters
    ----------
    n_data : int, optional
        Data qubits per generator. Default is 8.
    n_ancilla : int, optional
        Default is 2.
    n_layers : int, optional
        Default is 6.
    epochs : int, optional
        Default is 2.
    batch_size : int, optional
        Default is 32.
    lr : float, optional
        Adam learning rate of both players. Default is 0.01.
    hidden : tuple, optional
        Discriminator hidden widths. Default is (512, 128).
    seed : {int, None}, optional
    logger_level : {"info", "debug", "warning", "error", "critical", None}, optional

    Attributes
    ----------
    params : array
        Generator angles, shape (dimension, n_layers, n_data + n_ancilla).
    discriminator : Discriminator
    history : OrderedDict
        Per update: ``d_loss``, ``g_loss``, ``d_real`` and ``d_fake``.
    """
    tag = "qgan"

    def __init__(self,
                 n_data=8,
                 n_ancilla=2,
                 n_layers=6,
                 epochs=2,
                 batch_size=32,
                 lr=0.01,
                 hidden=(512, 128),
                 seed=None,
                 logger_level="info"):
        super(QganModel, self).__init__(seed=seed, logger_level=logger_level)

        self.n_data = n_data
        self.ansatz = LayeredAnsatz(n_data + n_ancilla, n_layers)
        self.epochs = epochs
        self.batch_size = batch_size
        self.lr = lr
        self.hidden = tuple(hidden)

        self.params = None
        self.binners = None
        self.discriminator = None
        self.reports = []


    @property
    def n_bins(self):
        return 2**self.n_data


    def initialize(self, dimension, rng):
        self.dimension = dimension
        self.params = np.array([self.ansatz.initial_parameters(rng) for _ in range(dimension)])
        self.discriminator = Discriminator(dimension*self.n_bins, self.hidden, rng)


    def fake_distributions(self, noise):
        return generator_distributions(self.ansatz, self.params, noise, self.n_data)


    def generator_loss(self, noise):
        """
        Non-saturating generator loss ``-log D(G(noise))`` and its gradient
        with respect to the generator angles, for a frozen discriminator.

        Returns
        -------
        loss : float
        gradient : array
            Same shape as `params`.
        d_fake : float
        """
        fake = self.fake_distributions(noise)

        x = Tensor(fake.reshape(1, -1), requires_grad=True)
        with Graph() as graph:
            d_fake = self.discriminator(x)
            loss = ops.bce_loss(d_fake, np.ones((1, 1)))
        graph.backward(loss)
        self.discriminator.zero_grad()

        input_grad = x.grad.reshape(self.dimension, self.n_bins)
        gradient = np.array([np.tensordot(input_grad[dimension],
                                          generator_jacobian(self.ansatz, self.params[dimension], b, self.n_data),
                                          axes=(0, 0))
                             for dimension, b in enumerate(noise)])

        return loss.item(), gradient, d_fake.item()


    def discriminator_step(self, real, fake, optimizer):
        self.discriminator.zero_grad()
        with Graph() as graph:
            d_real = self.discriminator(real.reshape(1, -1))
            d_fake = self.discriminator(fake.reshape(1, -1))
            loss = ops.add(ops.bce_loss(d_real, np.ones((1, 1))), ops.bce_loss(d_fake, np.zeros((1, 1))))
        graph.backward(loss)
        optimizer.step()
        return loss.item(), d_real.item(), d_fake.item()


    def train(self, latents):
        """
        Alternate one discriminator and one generator update per batch.

        Returns
        -------
        history : OrderedDict
            ``epochs*ceil(N/batch_size)`` entries per curve.
        """
        latents = self.check_latents(latents)
        rng = make_rng(self.seed)

        self.binners = fit_binners(latents, n_bins=self.n_bins)
        self.initialize(latents.shape[1], rng)

        d_optimizer = Adam(self.discriminator.parameters(), lr=self.lr)
        g_state = AdamState([self.params.shape], lr=self.lr)

        self.reports = []
        count = len(latents)
        batches = int(np.ceil(count/self.batch_size))

        self.logger.info("Training QGAN with {} generators of {} qubits for {} epochs".format(
            self.dimension, self.ansatz.n_qubits, self.epochs))

        with tqdm(total=self.epochs*batches, desc="Training QGAN", disable=self.quiet) as progress:
            for epoch in range(self.epochs):
                order = rng.permutation(count)

                for batch in range(batches):
                    indices = order[batch*self.batch_size:(batch + 1)*self.batch_size]
                    real = real_batch_distribution(latents[indices], self.binners)

                    noise = rng.integers(self.n_bins, size=self.dimension)
                    try:
                        d_loss, d_real, d_fake = self.discriminator_step(real, self.fake_distributions(noise), d_optimizer)
                    except NumericalError:
                        raise NumericalError("non-finite discriminator gradient", epoch=epoch, batch=batch)

                    # fresh noise for the generator update
                    noise = rng.integers(self.n_bins, size=self.dimension)
                    g_loss, gradient, _ = self.generator_loss(noise)
                    check_finite([d_loss, g_loss], "QGAN loss", epoch=epoch, batch=batch)

                    try:
                        adam_step([self.params], [gradient], g_state)
                    except NumericalError:
                        raise NumericalError("non-finite generator gradient", epoch=epoch, batch=batch)

                    self.reports.append(AdversarialBatchReport(d_loss, g_loss, d_real, d_fake))
                    progress.update(1)

        self.history = OrderedDict([("d_loss", [report.d_loss for report in self.reports]),
                                    ("g_loss", [report.g_loss for report in self.reports]),
                                    ("d_real", [report.d_real_mean for report in self.reports]),
                                    ("d_fake", [report.d_fake_mean for report in self.reports])])
        return self.history


    def noise_table(self):
        """Generator distributions for every noise bin, shape (dimension, n_bins, n_bins)."""
        if self.params is None:
            raise RuntimeError("QGAN has not been trained")

        table = np.empty((self.dimension, self.n_bins, self.n_bins))
        noise = np.arange(self.n_bins)
        for dimension in range(self.dimension):
            params = np.repeat(self.params[dimension][None], self.n_bins, axis=0)
            table[dimension] = generator_distributions(self.ansatz, params, noise, self.n_data)
        return table


    def sample(self, count, seed=None):
        """
        Per dimension: draw a uniform noise bin, sample a bin from the
        generator distribution and map it back to a latent value.
        """
        rng = make_rng(seed)
        table = self.noise_table()
        noise = rng.integers(self.n_bins, size=(count, self.dimension))

        samples = np.empty((count, self.dimension))
        for dimension, binner in enumerate(self.binners):
            bins = np.empty(count, dtype=int)
            for b in np.unique(noise[:, dimension]):
                rows = np.flatnonzero(noise[:, dimension] == b)
                p = table[dimension, b]
                bins[rows] = sample_bins(p/p.sum(), rng, len(rows))
            samples[:, dimension] = binner.dequantize(bins)
        return samples


    def save(self, filename):
        blocks = OrderedDict([
            ("meta.n_data", np.array([self.n_data])),
            ("meta.n_qubits", np.array([self.ansatz.n_qubits])),
            ("meta.n_layers", np.array([self.ansatz.n_layers])),
            ("meta.hidden", np.array(self.hidden)),
            ("binners", binner_blocks(self.binners)),
            ("params", self.params),
        ])
        for name, value in self.discriminator.state_dict().items():
            blocks["discriminator." + name] = value
        save_checkpoint(filename, blocks)


    @classmethod
    def load(cls, filename, logger_level="info"):
        blocks = load_checkpoint(filename)

        n_data = int(blocks["meta.n_data"][0])
        model = cls(n_data=n_data,
                    n_ancilla=int(blocks["meta.n_qubits"][0]) - n_data,
                    n_layers=int(blocks["meta.n_layers"][0]),
                    hidden=tuple(int(width) for width in blocks["meta.hidden"]),
                    logger_level=logger_level)
        model.binners = binners_from_block(blocks["binners"])
        model.initialize(len(model.binners), make_rng(0))
        model.params = blocks["params"]

        prefix = "discriminator."
        model.discriminator.load_state_dict(OrderedDict((name[len(prefix):], value)
                                                        for name, value in blocks.items()
                                                        if name.startswith(prefix)))
        return model



def train_qgan(latents, epochs=2, batch_size=32, lr=0.01, seed=None, logger_level="info", **kwargs):
    """Train a :py:class:`QganModel` and return ``(model, history)``."""
    model = QganModel(epochs=epochs, batch_size=batch_size, lr=lr, seed=seed, logger_level=logger_level, **kwargs)
    history = model.train(latents)
    return model, history


def sample_qgan(model, rng=None):
    """One latent vector from a trained :py:class:`QganModel`."""
    return model.sample(1, rng)[0]
