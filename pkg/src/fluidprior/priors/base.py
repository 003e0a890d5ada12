from __future__ import absolute_import, division, print_function, unicode_literals

from collections import OrderedDict

import numpy as np

from ..base import Base
from ..utils.utility import write_csv, write_matrix_csv


class Prior(Base):
    """
    Generative model over the latent vectors of the VQ-VAE.

    Subclasses implement ``train``, ``sample``, ``save`` and ``load``. The
    ``train`` method must fill `history`, a mapping from curve names to one
    value per update step or epoch.

    Parameters
    ----------
    seed : {int, None}, optional
        Seed for initialization and training randomness.
    CPUs : {int, None, "max"}, optional
        Worker processes for the parts that fan out. Default is None.
    logger_level : {"info", "debug", "warning", "error", "critical", None}, optional
        Default is "info".

    Attributes
    ----------
    tag : str
        Short model name used in file names and reports.
    dimension : int
        Dimension of the latent vectors.
    history : OrderedDict
        Loss curves of the last training.
    """
    tag = None


    def __init__(self, seed=None, CPUs=None, logger_level="info"):
        super(Prior, self).__init__(seed=seed, CPUs=CPUs, logger_level=logger_level)

        self.dimension = 7
        self.history = OrderedDict()


    def train(self, latents):
        """
        Fit the model to an (N, dimension) array of latent vectors.

        Returns
        -------
        history : OrderedDict

        Raises
        ------
        NotImplementedError
            If the subclass does not implement training.
        """
        raise NotImplementedError("No train method implemented for {}".format(self.__class__.__name__))


    def sample(self, count, seed=None):
        """
        Draw `count` latent vectors.

        Returns
        -------
        samples : array
            Shape (count, dimension).
        """
        raise NotImplementedError("No sample method implemented for {}".format(self.__class__.__name__))


    def save(self, filename):
        raise NotImplementedError("No save method implemented for {}".format(self.__class__.__name__))


    @classmethod
    def load(cls, filename, logger_level="info"):
        raise NotImplementedError("No load method implemented for {}".format(cls.__name__))


    def check_latents(self, latents):
        latents = np.asarray(latents, dtype=np.float64)
        if latents.ndim != 2 or len(latents) == 0:
            raise ValueError("{}: latents must be a nonempty N × D array, got shape {}".format(self.tag, latents.shape))
        if not np.all(np.isfinite(latents)):
            raise ValueError("{}: latents must be finite".format(self.tag))
        self.dimension = latents.shape[1]
        return latents


    def save_history(self, filename):
        """Write the loss curves as CSV, one row per step, with a ``step`` column."""
        names = list(self.history.keys())
        length = max([len(self.history[name]) for name in names] or [0])
        rows = ([step] + [self.history[name][step] if step < len(self.history[name]) else ""
                          for name in names]
                for step in range(length))
        write_csv(filename, ["step"] + names, rows)


def save_samples(filename, samples):
    """Write generated latents as CSV with columns ``z0..z{D-1}``."""
    samples = np.asarray(samples, dtype=np.float64)
    write_matrix_csv(filename, samples, ["z{}".format(i) for i in range(samples.shape[1])])
