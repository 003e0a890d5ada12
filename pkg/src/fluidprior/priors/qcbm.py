from __future__ import absolute_import, division, print_function, unicode_literals

from collections import OrderedDict

import numpy as np

from .base import Prior
from .binner import fit_binners, target_distribution, binner_blocks, binners_from_block
from .mmd import MmdKernel, mmd2, mmd_gradient
from ..autodiff import AdamState, adam_step, save_checkpoint, load_checkpoint
from ..exceptions import NumericalError
from ..quantum import LayeredAnsatz, circuit_probabilities, sample as sample_bins
from ..utils.utility import check_finite, make_rng, parallel_map


def train_qcbm(target, kernel=None, ansatz=None, iters=100, lr=0.1, seed=None, params=None):
    """
    Fit one Born machine to a target distribution by minimizing the MMD².

    Parameters
    ----------
    target : array
        Target distribution over ``2**n_qubits`` bins.
    kernel : {MmdKernel, None}, optional
        Default is the three-bandwidth kernel over 256 bins.
    ansatz : {LayeredAnsatz, None}, optional
        Default is 8 qubits with 7 layers.
    iters : int, optional
        Adam iterations. Default is 100.
    lr : float, optional
        Adam learning rate. Default is 0.1.
    seed : {int, Generator, None}, optional
        Seed for the initial angles, uniform in ``[-0.1, 0.1]``.
    params : {array, None}, optional
        Initial angles, overriding the seeded initialization.

    Returns
    -------
    params : array
        Trained angles.
    losses : list
        MMD² before each of the `iters` updates.
    final_loss : float
        MMD² of the trained angles.

    Raises
    ------
    NumericalError
        If the loss or its gradient becomes non-finite.
    """
    ansatz = LayeredAnsatz(8, 7) if ansatz is None else ansatz
    kernel = MmdKernel(n_bins=2**ansatz.n_qubits) if kernel is None else kernel

    if params is None:
        params = ansatz.initial_parameters(make_rng(seed))
    params = np.array(params, dtype=np.float64)

    state = AdamState([params.shape], lr=lr)
    losses = []

    for iteration in range(iters):
        loss, gradient = mmd_gradient(ansatz, params, target, kernel)
        check_finite(loss, "MMD loss", step=iteration)
        losses.append(loss)

        try:
            adam_step([params], [gradient], state)
        except NumericalError:
            raise NumericalError("non-finite MMD gradient", step=iteration)

    final_loss = mmd2(circuit_probabilities(ansatz, params), target, kernel)
    return params, losses, final_loss



class QcbmModel(Prior):
    """
    Factorized quantum circuit Born machine.

    Every latent dimension is quantized into ``2**n_qubits`` equal-probability
    Gaussian bins and modeled by its own layered circuit, trained on the MMD²
    to the empirical bin distribution. The circuits are independent, so they
    train in parallel and a latent vector is sampled one dimension at a time.

    Parameters
    ----------
    n_qubits : int, optional
        Default is 8 (256 bins).
    n_layers : int, optional
        Default is 7.
    iters : int, optional
        Adam iterations per circuit. Default is 100.
    lr : float, optional
        Default is 0.1.
    bandwidths : sequence of float, optional
        Kernel bandwidths. Default is (0.25, 0.5, 1.0).
    seed : {int, None}, optional
    CPUs : {int, None, "max"}, optional
        Worker processes for the per-dimension trainings.
    logger_level : {"info", "debug", "warning", "error", "critical", None}, optional

    Attributes
    ----------
    params : array
        Angles, shape (dimension, n_layers, n_qubits).
    binners : list of GaussianBinner
    targets : array
        Target distributions, shape (dimension, 2**n_qubits).
    history : OrderedDict
        Per-dimension MMD² curves ``mmd_0`` ... ``mmd_{D-1}``.
    final_losses : array
    """
    tag = "qcbm"

    def __init__(self,
                 n_qubits=8,
                 n_layers=7,
                 iters=100,
                 lr=0.1,
                 bandwidths=(0.25, 0.5, 1.0),
                 seed=None,
                 CPUs=None,
                 logger_level="info"):
        super(QcbmModel, self).__init__(seed=seed, CPUs=CPUs, logger_level=logger_level)

        self.ansatz = LayeredAnsatz(n_qubits, n_layers)
        self.iters = iters
        self.lr = lr
        self.kernel = MmdKernel(bandwidths, n_bins=2**n_qubits)

        self.params = None
        self.binners = None
        self.targets = None
        self.final_losses = None


    @property
    def n_bins(self):
        return 2**self.ansatz.n_qubits


    def train(self, latents):
        """
        Fit binners and train one circuit per dimension.

        Each dimension gets its own child of the seed sequence, so the result
        of a dimension does not depend on the others or on `CPUs`.
        """
        latents = self.check_latents(latents)

        self.binners = fit_binners(latents, n_bins=self.n_bins)
        self.targets = np.array([target_distribution(binner, latents[:, dimension])
                                 for dimension, binner in enumerate(self.binners)])

        seeds = np.random.SeedSequence(self.seed).spawn(self.dimension)
        ansatz, kernel, iters, lr, targets = self.ansatz, self.kernel, self.iters, self.lr, self.targets

        def train_dimension(dimension):
            return train_qcbm(targets[dimension], kernel=kernel, ansatz=ansatz,
                              iters=iters, lr=lr, seed=np.random.default_rng(seeds[dimension]))

        self.logger.info("Training {} circuits with {} qubits and {} layers".format(
            self.dimension, self.ansatz.n_qubits, self.ansatz.n_layers))

        results = parallel_map(train_dimension, range(self.dimension),
                               CPUs=self.CPUs, desc="Training QCBM", disable=self.quiet)

        self.params = np.array([params for params, _, _ in results])
        self.final_losses = np.array([final for _, _, final in results])
        self.history = OrderedDict(("mmd_{}".format(dimension), losses)
                                   for dimension, (_, losses, _) in enumerate(results))

        for dimension, final in enumerate(self.final_losses):
            self.logger.debug("dimension {}: final MMD² {:.6g}".format(dimension, final))

        return self.history


    def distributions(self):
        """Born distributions of the trained circuits, shape (dimension, n_bins)."""
        if self.params is None:
            raise RuntimeError("QCBM has not been trained")

        return np.array([circuit_probabilities(self.ansatz, params) for params in self.params])


    def sample(self, count, seed=None):
        """
        Sample bins independently per dimension and map them back to latent
        values.
        """
        rng = make_rng(seed)
        distributions = self.distributions()

        samples = np.empty((count, self.dimension))
        for dimension, (p, binner) in enumerate(zip(distributions, self.binners)):
            # Born probabilities carry rounding error of order 1e-15
            samples[:, dimension] = binner.dequantize(sample_bins(p/p.sum(), rng, count))
        return samples


    def save(self, filename):
        save_checkpoint(filename, OrderedDict([
            ("meta.n_qubits", np.array([self.ansatz.n_qubits])),
            ("meta.n_layers", np.array([self.ansatz.n_layers])),
            ("meta.bandwidths", np.array(self.kernel.bandwidths)),
            ("binners", binner_blocks(self.binners)),
            ("targets", self.targets),
            ("final_losses", self.final_losses),
            ("params", self.params),
        ]))


    @classmethod
    def load(cls, filename, logger_level="info"):
        blocks = load_checkpoint(filename)

        model = cls(n_qubits=int(blocks["meta.n_qubits"][0]),
                    n_layers=int(blocks["meta.n_layers"][0]),
                    bandwidths=list(blocks["meta.bandwidths"]),
                    logger_level=logger_level)
        model.binners = binners_from_block(blocks["binners"])
        model.targets = blocks["targets"]
        model.final_losses = blocks["final_losses"]
        model.params = blocks["params"]
        model.dimension = len(model.binners)
        return model



def sample_latent_vector(model, rng=None):
    """One latent vector from a trained :py:class:`QcbmModel`."""
    return model.sample(1, rng)[0]
