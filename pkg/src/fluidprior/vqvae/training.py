from __future__ import absolute_import, division, print_function, unicode_literals

from collections import OrderedDict

import numpy as np
from tqdm import tqdm

from ..autodiff import Graph, Adam
from ..base import Base
from ..exceptions import NumericalError
from ..utils.utility import check_finite, make_rng, write_csv
from .model import VqVaeModel


LOSS_TERMS = ["reconstruction", "codebook", "commitment", "total"]


class VqVaeTrainer(Base):
    """
    Train a :py:class:`~fluidprior.vqvae.model.VqVaeModel` on vorticity
    snapshots with Adam.

    The snapshots are standardized by their global mean and standard
    deviation, which are stored in the model. Batches are drawn from a
    seeded permutation of the dataset every epoch.

    Parameters
    ----------
    model : {VqVaeModel, None}, optional
        Model to train. If None a model with default widths is created for
        the snapshot shape in :py:meth:`train`.
    epochs : int, optional
        Default is 50.
    batch_size : int, optional
        Default is 32.
    lr : float, optional
        Adam learning rate. Default is 0.0005.
    beta : float, optional
        Commitment weight. Default is 0.2.
    seed : {int, None}, optional
        Seed for the model initialization and the epoch shuffles.
    logger_level : {"info", "debug", "warning", "error", "critical", None}, optional
        Default is "info".

    Attributes
    ----------
    history : OrderedDict
        Mean of each loss term per epoch, keys "reconstruction", "codebook",
        "commitment" and "total".
    """
    def __init__(self,
                 model=None,
                 epochs=50,
                 batch_size=32,
                 lr=0.0005,
                 beta=0.2,
                 seed=None,
                 logger_level="info"):
        super(VqVaeTrainer, self).__init__(seed=seed, logger_level=logger_level)

        if epochs < 1 or batch_size < 1:
            raise ValueError("epochs and batch_size must be positive")
        if beta < 0:
            raise ValueError("beta must be non-negative, got {}".format(beta))

        self.model = model
        self.epochs = epochs
        self.batch_size = batch_size
        self.lr = lr
        self.beta = beta

        self.rng = make_rng(seed)
        self.optimizer = None
        self.history = OrderedDict((term, []) for term in LOSS_TERMS)


    def prepare(self, dataset):
        """
        Create the model (if needed), set the normalization from `dataset`
        and create the optimizer.
        """
        dataset = np.asarray(dataset, dtype=np.float64)
        if dataset.ndim != 3 or len(dataset) == 0:
            raise ValueError("dataset must be a nonempty array of snapshots, got shape {}".format(dataset.shape))

        if self.model is None:
            self.model = VqVaeModel(input_shape=dataset.shape[1:], seed=self.rng.integers(2**32))

        std = dataset.std()
        self.model.data_mean[...] = dataset.mean()
        self.model.data_std[...] = std if std > 0 else 1.

        self.optimizer = Adam(self.model.parameters(), lr=self.lr)
        return dataset


    def train_step(self, batch, epoch=None, batch_index=None):
        """
        One forward/backward pass and Adam update on `batch`.

        Returns
        -------
        terms : OrderedDict
            Value of each loss term.

        Raises
        ------
        NumericalError
            If the loss or a gradient is not finite. The parameters are left
            untouched.
        """
        if self.optimizer is None:
            self.prepare(batch)

        self.model.train()
        with Graph() as graph:
            result = self.model(batch, beta=self.beta)

        terms = OrderedDict((term, result[term].item()) for term in LOSS_TERMS)
        check_finite(list(terms.values()), "VQ-VAE loss", epoch=epoch, batch=batch_index)

        graph.backward(result["total"])
        try:
            self.optimizer.step()
        except NumericalError:
            raise NumericalError("non-finite VQ-VAE gradient", epoch=epoch, batch=batch_index)

        return terms


    def train(self, dataset):
        """
        Train for `epochs` epochs.

        Parameters
        ----------
        dataset : array
            Snapshots, shape (N, nx, ny).

        Returns
        -------
        model : VqVaeModel
            The trained model, in evaluation mode.
        history : OrderedDict
            Per-epoch loss history.
        """
        dataset = self.prepare(dataset)
        count = len(dataset)

        self.logger.info("Training VQ-VAE on {} snapshots for {} epochs".format(count, self.epochs))

        for epoch in tqdm(range(self.epochs), desc="Training VQ-VAE", disable=self.quiet):
            order = self.rng.permutation(count)
            sums = OrderedDict((term, 0.) for term in LOSS_TERMS)

            for batch_index, start in enumerate(range(0, count, self.batch_size)):
                indices = order[start:start + self.batch_size]
                terms = self.train_step(dataset[indices], epoch=epoch, batch_index=batch_index)
                for term in LOSS_TERMS:
                    sums[term] += terms[term]*len(indices)

            for term in LOSS_TERMS:
                self.history[term].append(sums[term]/count)

            self.logger.debug("epoch {}: total loss {:.6g}".format(epoch, self.history["total"][-1]))

        self.model.eval()
        return self.model, self.history


    def save_history(self, filename):
        """Write the loss history as CSV with an ``epoch`` column."""
        rows = ([epoch] + [self.history[term][epoch] for term in LOSS_TERMS]
                for epoch in range(len(self.history["total"])))
        write_csv(filename, ["epoch"] + LOSS_TERMS, rows)



def train_vqvae(dataset, epochs=50, batch_size=32, lr=0.0005, beta=0.2, seed=None, model=None, logger_level="info"):
    """Train a VQ-VAE and return ``(model, history)``."""
    trainer = VqVaeTrainer(model=model,
                           epochs=epochs,
                           batch_size=batch_size,
                           lr=lr,
                           beta=beta,
                           seed=seed,
                           logger_level=logger_level)
    return trainer.train(dataset)
