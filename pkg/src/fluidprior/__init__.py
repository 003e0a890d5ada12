"""
fluidprior learns compact generative priors for fluid flow.

A D2Q9 lattice Boltzmann simulation of channel flow past a cylinder produces
vorticity snapshots. A vector-quantized autoencoder compresses every snapshot
into a 7 dimensional latent vector, and three generative models are trained
on the encoded dataset: a factorized quantum circuit Born machine, a hybrid
quantum GAN and a classical LSTM. Their samples are compared against the
encoded dataset with nearest-neighbor distances, PCA and t-SNE.

The quantum circuits run on a built-in state vector simulator and the neural
networks on a small reverse-mode automatic differentiation library, so the
whole study only needs numpy and scipy for the numerics.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

from .exceptions import (FluidPriorError, ConfigurationError, PrerequisiteError,
                         NumericalError, ShapeError, UsageError, FileFormatError)
from .lattice import LatticeConfig, ObstacleMask, LatticeSimulation, collect_snapshots
from .vqvae import VqVaeModel, VqVaeTrainer, LatentTable, encode_dataset
from .priors import QcbmModel, QganModel, LstmPrior, PRIORS
from .evaluation import MetricsReport, build_report, emit_report
from .plotting import PlotReport
from .pipeline import PipelineConfig, load_config, Pipeline
from ._version import __version__
