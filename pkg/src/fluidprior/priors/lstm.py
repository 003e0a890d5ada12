from __future__ import absolute_import, division, print_function, unicode_literals

from collections import namedtuple, OrderedDict

import numpy as np
from tqdm import tqdm

from .base import Prior
from ..autodiff import Tensor, Graph, Module, Linear, Adam, ops, save_checkpoint, load_checkpoint
from ..exceptions import NumericalError
from ..utils.utility import check_finite, make_rng


GATES = ["input", "forget", "output", "candidate"]

LstmState = namedtuple("LstmState", ["h", "c"])


class LstmNetwork(Module):
    """
    Single LSTM cell with a scalar input and a linear scalar output head.

    Every gate has its own input block (1 → hidden, with bias) and recurrent
    block (hidden → hidden, without bias). The forget gate bias starts at 1.
    """
    def __init__(self, hidden=256, rng=None):
        super(LstmNetwork, self).__init__()

        rng = make_rng(rng)
        self.hidden = hidden

        for gate in GATES:
            setattr(self, "x_" + gate, Linear(1, hidden, rng))
            setattr(self, "h_" + gate, Linear(hidden, hidden, rng, bias=False))
        self.x_forget.bias.data[...] = 1
        self.head = Linear(hidden, 1, rng)


    def initial_state(self, batch):
        return LstmState(h=Tensor(np.zeros((batch, self.hidden))), c=Tensor(np.zeros((batch, self.hidden))))


    def gate(self, name, x, h):
        return ops.add(getattr(self, "x_" + name)(x), getattr(self, "h_" + name)(h))


    def forward(self, x, state):
        return lstm_cell(self, x, state)



def lstm_cell(network, x, state):
    """
    One LSTM step.

    ``i, f, o = sigmoid(.)``, ``g = tanh(.)``, ``c' = f c + i g``,
    ``h' = o tanh(c')`` and ``y = head(h')``.

    Parameters
    ----------
    network : LstmNetwork
    x : {Tensor, array}
        Inputs, shape (N, 1).
    state : LstmState

    Returns
    -------
    y : Tensor
        Outputs, shape (N, 1).
    state : LstmState
    """
    x = ops.as_tensor(x)
    h, c = state

    i = ops.sigmoid(network.gate("input", x, h))
    f = ops.sigmoid(network.gate("forget", x, h))
    o = ops.sigmoid(network.gate("output", x, h))
    g = ops.tanh(network.gate("candidate", x, h))

    c = ops.add(ops.mul(f, c), ops.mul(i, g))
    h = ops.mul(o, ops.tanh(c))

    return network.head(h), LstmState(h=h, c=c)


def teacher_forced_loss(network, sequences, noise):
    """
    Mean over the steps of the batch-mean squared prediction error.

    Step ``t`` predicts dimension ``t``; the input is `noise` at the first step
    and the true dimension ``t - 1`` afterwards.
    """
    sequences = np.asarray(sequences, dtype=np.float64)
    count, length = sequences.shape

    state = network.initial_state(count)
    x = np.asarray(noise, dtype=np.float64).reshape(count, 1)

    total = None
    for step in range(length):
        y, state = lstm_cell(network, x, state)
        loss = ops.mse_loss(y, sequences[:, step:step + 1])
        total = loss if total is None else ops.add(total, loss)
        x = sequences[:, step:step + 1]

    return ops.mul(total, 1./length)



class LstmPrior(Prior):
    """
    Autoregressive LSTM over the latent dimensions, trained with teacher
    forcing on the squared error.

    Parameters
    ----------
    hidden : int, optional
        Default is 256.
    epochs : int, optional
        Default is 100.
    lr : float, optional
        Adam learning rate. Default is 0.001.
    batch_size : int, optional
        Default is 32.
    seed : {int, None}, optional
    logger_level : {"info", "debug", "warning", "error", "critical", None}, optional

    Attributes
    ----------
    network : LstmNetwork
    history : OrderedDict
        ``loss``, the mean teacher-forced loss per epoch.
    """
    tag = "lstm"

    def __init__(self, hidden=256, epochs=100, lr=0.001, batch_size=32, seed=None, logger_level="info"):
        super(LstmPrior, self).__init__(seed=seed, logger_level=logger_level)

        self.hidden = hidden
        self.epochs = epochs
        self.lr = lr
        self.batch_size = batch_size
        self.network = None


    def train(self, latents):
        latents = self.check_latents(latents)
        rng = make_rng(self.seed)

        self.network = LstmNetwork(self.hidden, rng)
        optimizer = Adam(self.network.parameters(), lr=self.lr)

        count = len(latents)
        losses = []

        self.logger.info("Training LSTM with {} hidden units for {} epochs".format(self.hidden, self.epochs))

        for epoch in tqdm(range(self.epochs), desc="Training LSTM", disable=self.quiet):
            order = rng.permutation(count)
            # noise is resampled for every sample and epoch
            noise = rng.standard_normal(count)
            epoch_loss = 0.

            for batch, start in enumerate(range(0, count, self.batch_size)):
                indices = order[start:start + self.batch_size]

                with Graph() as graph:
                    loss = teacher_forced_loss(self.network, latents[indices], noise[indices])
                check_finite(loss.data, "LSTM loss", epoch=epoch, batch=batch)

                graph.backward(loss)
                try:
                    optimizer.step()
                except NumericalError:
                    raise NumericalError("non-finite LSTM gradient", epoch=epoch, batch=batch)

                epoch_loss += loss.item()*len(indices)

            losses.append(epoch_loss/count)

        self.history = OrderedDict([("loss", losses)])
        return self.history


    def sample(self, count, seed=None):
        """
        Generate latent vectors from standard normal noise, feeding every
        prediction back as the next input.
        """
        if self.network is None:
            raise RuntimeError("LSTM has not been trained")

        rng = make_rng(seed)
        x = rng.standard_normal((count, 1))
        state = self.network.initial_state(count)

        samples = np.empty((count, self.dimension))
        for step in range(self.dimension):
            y, state = lstm_cell(self.network, x, state)
            samples[:, step] = y.data[:, 0]
            x = y.data
        return samples


    def save(self, filename):
        blocks = OrderedDict([("meta.hidden", np.array([self.hidden])),
                              ("meta.dimension", np.array([self.dimension]))])
        blocks.update(self.network.state_dict())
        save_checkpoint(filename, blocks)


    @classmethod
    def load(cls, filename, logger_level="info"):
        blocks = load_checkpoint(filename)

        model = cls(hidden=int(blocks["meta.hidden"][0]), logger_level=logger_level)
        model.dimension = int(blocks["meta.dimension"][0])
        model.network = LstmNetwork(model.hidden, make_rng(0))
        model.network.load_state_dict(blocks)
        return model



def train_lstm(latents, epochs=100, hidden=256, lr=0.001, batch_size=32, seed=None, logger_level="info"):
    """Train an :py:class:`LstmPrior` and return ``(model, history)``."""
    model = LstmPrior(hidden=hidden, epochs=epochs, lr=lr, batch_size=batch_size, seed=seed, logger_level=logger_level)
    history = model.train(latents)
    return model, history


def sample_lstm(model, rng=None):
    """One latent vector from a trained :py:class:`LstmPrior`."""
    return model.sample(1, rng)[0]
