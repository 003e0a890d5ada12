"""
Generative priors over the VQ-VAE latent space: a factorized quantum circuit
Born machine, a hybrid quantum GAN and a classical LSTM.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

__all__ = ["Prior", "PRIORS", "save_samples",
           "GaussianBinner", "fit_binner", "fit_binners", "quantize_value", "dequantize_bin",
           "target_distribution", "standard_representatives",
           "MmdKernel", "mmd2", "mmd_gradient",
           "QcbmModel", "train_qcbm", "sample_latent_vector",
           "QganModel", "Discriminator", "AdversarialBatchReport", "encode_noise",
           "generator_distribution", "generator_distributions", "real_batch_distribution",
           "discriminator_forward", "train_qgan", "sample_qgan",
           "LstmPrior", "LstmNetwork", "LstmState", "lstm_cell", "train_lstm", "sample_lstm"]

from .base import Prior, save_samples
from .binner import (GaussianBinner, fit_binner, fit_binners, quantize_value, dequantize_bin,
                     target_distribution, standard_representatives)
from .mmd import MmdKernel, mmd2, mmd_gradient
from .qcbm import QcbmModel, train_qcbm, sample_latent_vector
from .qgan import (QganModel, Discriminator, AdversarialBatchReport, encode_noise,
                   generator_distribution, generator_distributions, real_batch_distribution,
                   discriminator_forward, train_qgan, sample_qgan)
from .lstm import LstmPrior, LstmNetwork, LstmState, lstm_cell, train_lstm, sample_lstm

PRIORS = {"qcbm": QcbmModel, "qgan": QganModel, "lstm": LstmPrior}
