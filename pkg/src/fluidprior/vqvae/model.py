from __future__ import absolute_import, division, print_function, unicode_literals

from collections import namedtuple, OrderedDict

import numpy as np

from ..autodiff import Tensor, Module, Linear, Conv2d, ConvTranspose2d, BatchNorm, Sequential
from ..autodiff import ops, save_checkpoint, load_checkpoint
from ..exceptions import ShapeError
from ..utils.utility import make_rng


class VqLossTerms(namedtuple("VqLossTerms", ["reconstruction", "codebook", "commitment", "beta"])):
    """
    The three terms of the VQ-VAE objective.

    ``total = reconstruction + codebook + beta*commitment``.
    """
    __slots__ = ()

    @property
    def total(self):
        return self.reconstruction + self.codebook + self.beta*self.commitment



def quantize(z_e, codebook):
    """
    Nearest codeword in squared Euclidean distance, ties go to the lowest
    index.

    Parameters
    ----------
    z_e : array
        A single vector of shape (D,) or a batch of shape (N, D).
    codebook : array
        Codewords, shape (K, D), K >= 1.

    Returns
    -------
    index : {int, array}
        Selected codeword index (per row for a batch).
    e : array
        The selected codeword(s).
    """
    codebook = np.asarray(getattr(codebook, "data", codebook), dtype=np.float64)
    z_e = np.asarray(getattr(z_e, "data", z_e), dtype=np.float64)

    if codebook.ndim != 2 or codebook.shape[0] == 0:
        raise ValueError("codebook must be a nonempty K × D array, got shape {}".format(codebook.shape))

    single = z_e.ndim == 1
    batch = np.atleast_2d(z_e)
    if batch.shape[1] != codebook.shape[1]:
        raise ShapeError("quantize: vector dimension {} does not match codebook {}".format(batch.shape[1], codebook.shape))

    difference = batch[:, None, :] - codebook[None, :, :]
    distances = np.einsum("nkd,nkd->nk", difference, difference)
    # argmin returns the first minimum
    indices = np.argmin(distances, axis=1)

    if single:
        return int(indices[0]), codebook[indices[0]].copy()
    return indices, codebook[indices]


def vqvae_loss_terms(x, x_hat, z_e, e, beta=0.2):
    """
    Differentiable loss terms.

    Each term is a squared Euclidean norm per sample, averaged over the
    leading (batch) axis:

    * reconstruction ``|x - x_hat|^2``
    * codebook ``|sg(z_e) - e|^2``
    * commitment ``|z_e - sg(e)|^2``

    Returns
    -------
    reconstruction, codebook, commitment, total : Tensor
    """
    if beta < 0:
        raise ValueError("beta must be non-negative, got {}".format(beta))

    x, x_hat, z_e, e = (ops.as_tensor(value) for value in (x, x_hat, z_e, e))
    count = float(x.shape[0]) if x.ndim > 1 else 1.

    def squared_norm(difference):
        return ops.mul(ops.sum(ops.mul(difference, difference)), 1/count)

    reconstruction = squared_norm(ops.sub(x, x_hat))
    codebook = squared_norm(ops.sub(ops.stop_gradient(z_e), e))
    commitment = squared_norm(ops.sub(z_e, ops.stop_gradient(e)))

    total = ops.add(ops.add(reconstruction, codebook), ops.mul(commitment, float(beta)))

    return reconstruction, codebook, commitment, total


def vqvae_loss(x, x_hat, z_e, e, beta=0.2):
    """
    Numeric value of the VQ-VAE objective.

    Returns
    -------
    terms : VqLossTerms
    """
    reconstruction, codebook, commitment, _ = vqvae_loss_terms(x, x_hat, z_e, e, beta)
    return VqLossTerms(reconstruction=reconstruction.item(),
                       codebook=codebook.item(),
                       commitment=commitment.item(),
                       beta=float(beta))


class VqVaeModel(Module):
    """
    Convolutional VQ-VAE with a single vector latent.

    The image encoder halves the spatial size in each of its strided
    convolution blocks (kernel 4, stride 2, padding 1, batch norm, ReLU). An
    MLP maps the flattened feature map to the latent vector, which is snapped
    to the nearest codeword. The decoder mirrors the encoder with transposed
    convolutions, the last block is linear.

    Parameters
    ----------
    input_shape : tuple, optional
        Snapshot shape (nx, ny), both divisible by ``2**len(channels)``.
        Default is (256, 64).
    channels : tuple, optional
        Output channels of the encoder blocks. Default is (32, 64, 128, 256).
    hidden : int, optional
        Width of the bottleneck MLPs. Default is 2048.
    latent_dim : int, optional
        Dimension of the latent vector and the codewords. Default is 7.
    codebook_size : int, optional
        Number of codewords. Default is 128.
    seed : {int, None}, optional
        Seed for the initialization.

    Attributes
    ----------
    codebook : Tensor
        Codewords, shape (codebook_size, latent_dim), initialized uniformly
        in ``[-1/codebook_size, 1/codebook_size]``.
    data_mean, data_std : array
        Normalization of the vorticity inputs, set by the trainer.
    """
    def __init__(self,
                 input_shape=(256, 64),
                 channels=(32, 64, 128, 256),
                 hidden=2048,
                 latent_dim=7,
                 codebook_size=128,
                 seed=None):
        super(VqVaeModel, self).__init__()

        factor = 2**len(channels)
        if input_shape[0] % factor or input_shape[1] % factor:
            raise ValueError("input shape {} must be divisible by {}".format(input_shape, factor))

        self.input_shape = tuple(int(extent) for extent in input_shape)
        self.channels = tuple(int(channel) for channel in channels)
        self.hidden = int(hidden)
        self.latent_dim = int(latent_dim)
        self.codebook_size = int(codebook_size)

        self.feature_shape = (self.channels[-1], self.input_shape[0]//factor, self.input_shape[1]//factor)
        features = int(np.prod(self.feature_shape))

        rng = make_rng(seed)

        blocks = []
        in_channels = 1
        for out_channels in self.channels:
            blocks.extend([Conv2d(in_channels, out_channels, 4, rng, stride=2, pad=1),
                           BatchNorm(out_channels),
                           ops.relu])
            in_channels = out_channels
        self.image_encoder = Sequential(*blocks)

        self.bottleneck_encoder = Sequential(Linear(features, self.hidden, rng),
                                             ops.relu,
                                             Linear(self.hidden, self.latent_dim, rng))

        self.codebook = Tensor(rng.uniform(-1./self.codebook_size, 1./self.codebook_size,
                                           size=(self.codebook_size, self.latent_dim)),
                               requires_grad=True)

        self.bottleneck_decoder = Sequential(Linear(self.latent_dim, self.hidden, rng),
                                             ops.relu,
                                             Linear(self.hidden, features, rng),
                                             ops.relu)

        blocks = []
        reversed_channels = list(self.channels[::-1]) + [1]
        for index, (in_channels, out_channels) in enumerate(zip(reversed_channels[:-1], reversed_channels[1:])):
            blocks.append(ConvTranspose2d(in_channels, out_channels, 4, rng, stride=2, pad=1))
            if index < len(self.channels) - 1:
                blocks.extend([BatchNorm(out_channels), ops.relu])
        self.image_decoder = Sequential(*blocks)

        self.register_buffer("data_mean", np.zeros(1))
        self.register_buffer("data_std", np.ones(1))


    def _as_batch(self, snapshots):
        """Standardized (N, 1, nx, ny) tensor from raw snapshots."""
        if isinstance(snapshots, Tensor):
            return snapshots

        data = np.asarray(snapshots, dtype=np.float64)
        if data.ndim == 2:
            data = data[None]
        if data.ndim != 3 or data.shape[1:] != self.input_shape:
            raise ShapeError("expected snapshots of shape {}, got {}".format(self.input_shape, np.shape(snapshots)))

        return Tensor(((data - self.data_mean[0])/self.data_std[0])[:, None, :, :])


    def encode_batch(self, snapshots):
        """Continuous latents z_e as an (N, latent_dim) tensor."""
        x = self._as_batch(snapshots)
        features = self.image_encoder(x)
        flat = ops.reshape(features, (x.shape[0], -1))
        return self.bottleneck_encoder(flat)


    def decode_batch(self, z):
        """Standardized reconstructions as an (N, 1, nx, ny) tensor."""
        z = ops.as_tensor(z)
        if z.ndim != 2 or z.shape[1] != self.latent_dim:
            raise ShapeError("decode: latent shape {} does not match dimension {}".format(z.shape, self.latent_dim))

        flat = self.bottleneck_decoder(z)
        features = ops.reshape(flat, (z.shape[0],) + self.feature_shape)
        return self.image_decoder(features)


    def forward(self, snapshots, beta=0.2):
        """
        Full pass with quantization and straight-through estimation.

        Parameters
        ----------
        snapshots : {array, Tensor}
            Raw snapshots (N, nx, ny), or an already standardized
            (N, 1, nx, ny) tensor.
        beta : float, optional
            Commitment weight. Default is 0.2.

        Returns
        -------
        result : OrderedDict
            ``x``, ``z_e``, ``indices``, ``e``, ``z_q`` (decoder input),
            ``x_hat`` and the loss tensors ``reconstruction``, ``codebook``,
            ``commitment`` and ``total``.
        """
        x = self._as_batch(snapshots)

        z_e = self.encode_batch(x)
        indices, _ = quantize(z_e.data, self.codebook.data)
        e = ops.gather_rows(self.codebook, indices)

        # Straight-through: forward uses e, backward copies the gradient to z_e
        z_q = ops.add(z_e, ops.stop_gradient(ops.sub(e, z_e)))

        x_hat = self.decode_batch(z_q)

        reconstruction, codebook, commitment, total = vqvae_loss_terms(x, x_hat, z_e, e, beta)

        return OrderedDict([("x", x), ("z_e", z_e), ("indices", indices), ("e", e), ("z_q", z_q),
                            ("x_hat", x_hat), ("reconstruction", reconstruction), ("codebook", codebook),
                            ("commitment", commitment), ("total", total)])


    def encode(self, snapshot):
        """
        Continuous latent of a single snapshot.

        Parameters
        ----------
        snapshot : array
            Raw vorticity of shape `input_shape`.

        Returns
        -------
        z_e : array
            Vector of length `latent_dim`.
        """
        snapshot = np.asarray(snapshot)
        if snapshot.shape != self.input_shape:
            raise ShapeError("encode: expected shape {}, got {}".format(self.input_shape, snapshot.shape))
        return self.encode_batch(snapshot).data[0].copy()


    def quantize(self, z_e):
        return quantize(z_e, self.codebook.data)


    def decode(self, e):
        """
        Vorticity field for a latent vector, in the units of the training
        data.

        Returns
        -------
        snapshot : array
            Shape `input_shape`.
        """
        e = np.asarray(e, dtype=np.float64)
        if e.shape != (self.latent_dim,):
            raise ShapeError("decode: expected a vector of length {}, got shape {}".format(self.latent_dim, e.shape))
        return self.decode_latents(e[None])[0]


    def decode_latents(self, latents):
        """De-standardized vorticity fields for an (N, latent_dim) array."""
        standardized = self.decode_batch(np.asarray(latents, dtype=np.float64)).data[:, 0]
        return standardized*self.data_std[0] + self.data_mean[0]


    def architecture(self):
        return OrderedDict([("meta.input_shape", np.array(self.input_shape, dtype=np.float64)),
                            ("meta.channels", np.array(self.channels, dtype=np.float64)),
                            ("meta.hidden", np.array([self.hidden], dtype=np.float64)),
                            ("meta.latent_dim", np.array([self.latent_dim], dtype=np.float64)),
                            ("meta.codebook_size", np.array([self.codebook_size], dtype=np.float64))])


    def save(self, filename):
        """Write architecture, parameters and normalization to an FLP1 checkpoint."""
        blocks = self.architecture()
        blocks.update(self.state_dict())
        save_checkpoint(filename, blocks)


    @classmethod
    def load(cls, filename):
        """Rebuild a model from a checkpoint written by :py:meth:`save`."""
        blocks = load_checkpoint(filename)

        model = cls(input_shape=tuple(int(extent) for extent in blocks["meta.input_shape"]),
                    channels=tuple(int(channel) for channel in blocks["meta.channels"]),
                    hidden=int(blocks["meta.hidden"][0]),
                    latent_dim=int(blocks["meta.latent_dim"][0]),
                    codebook_size=int(blocks["meta.codebook_size"][0]),
                    seed=0)
        model.load_state_dict(blocks)
        model.eval()
        return model
