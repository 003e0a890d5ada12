"""
Vector-quantized autoencoder for vorticity snapshots.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

__all__ = ["VqVaeModel", "VqLossTerms", "quantize", "vqvae_loss", "vqvae_loss_terms",
           "VqVaeTrainer", "train_vqvae", "LOSS_TERMS",
           "LatentTable", "encode_dataset", "decode_latents"]

from .model import VqVaeModel, VqLossTerms, quantize, vqvae_loss, vqvae_loss_terms
from .training import VqVaeTrainer, train_vqvae, LOSS_TERMS
from .latents import LatentTable, encode_dataset


def decode_latents(model, latents):
    """Vorticity fields, in data units, for an (N, D) array of latent vectors."""
    return model.decode_latents(latents)
