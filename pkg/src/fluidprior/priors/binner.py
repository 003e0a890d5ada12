from __future__ import absolute_import, division, print_function, unicode_literals

import numpy as np
from scipy.special import ndtr, ndtri


N_BINS = 256


def standard_representatives(n_bins=N_BINS):
    """Bin centres of the standard normal, ``ndtri((b + 0.5)/n_bins)``."""
    return ndtri((np.arange(n_bins) + 0.5)/n_bins)


class GaussianBinner(object):
    """
    Equal-probability quantizer for approximately Gaussian values.

    Bin ``b`` covers the quantiles ``[b/n_bins, (b + 1)/n_bins)`` of
    ``N(mu, sigma^2)`` and is represented by the value at its centre
    quantile, ``mu + sigma*ndtri((b + 0.5)/n_bins)``.

    Parameters
    ----------
    mu : float
    sigma : float
        Positive standard deviation.
    n_bins : int, optional
        Default is 256, one bin per basis state of 8 qubits.
    """
    def __init__(self, mu, sigma, n_bins=N_BINS):
        if not np.isfinite(mu) or not np.isfinite(sigma) or sigma <= 0:
            raise ValueError("binner needs a finite mean and a positive standard deviation, got {}, {}".format(mu, sigma))

        self.mu = float(mu)
        self.sigma = float(sigma)
        self.n_bins = int(n_bins)


    @property
    def representatives(self):
        return self.mu + self.sigma*standard_representatives(self.n_bins)


    def quantize(self, values):
        """
        Bin index ``clamp(floor(n_bins*Phi((v - mu)/sigma)), 0, n_bins - 1)``.

        Returns an int for a scalar and an int array otherwise.
        """
        values = np.asarray(values, dtype=np.float64)
        if not np.all(np.isfinite(values)):
            raise ValueError("values to quantize must be finite")

        bins = np.floor(self.n_bins*ndtr((values - self.mu)/self.sigma)).astype(np.int64)
        bins = np.clip(bins, 0, self.n_bins - 1)
        return int(bins) if bins.ndim == 0 else bins


    def dequantize(self, bins):
        """
        Representative value of each bin.

        Raises
        ------
        ValueError
            If a bin index is outside ``0 .. n_bins - 1``.
        """
        bins = np.asarray(bins)
        if np.any(bins < 0) or np.any(bins >= self.n_bins):
            raise ValueError("bin index out of range 0..{}".format(self.n_bins - 1))

        values = self.mu + self.sigma*ndtri((bins + 0.5)/self.n_bins)
        return float(values) if values.ndim == 0 else values


    def target_distribution(self, values):
        return target_distribution(self, values)


    def __repr__(self):
        return "GaussianBinner(mu={:.6g}, sigma={:.6g}, n_bins={})".format(self.mu, self.sigma, self.n_bins)



def quantize_value(binner, value):
    return binner.quantize(value)


def dequantize_bin(binner, b):
    return binner.dequantize(b)


def fit_binner(values, n_bins=N_BINS):
    """
    Binner with the sample mean and unbiased standard deviation of `values`.

    Raises
    ------
    ValueError
        If there are fewer than two values or they are all equal.
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    if len(values) < 2:
        raise ValueError("fitting a binner needs at least two values, got {}".format(len(values)))

    sigma = values.std(ddof=1)
    if not sigma > 0:
        raise ValueError("degenerate latent dimension, all values are equal to {}".format(values[0]))

    return GaussianBinner(values.mean(), sigma, n_bins=n_bins)


def fit_binners(latents, n_bins=N_BINS):
    """One binner per column of an (N, D) latent matrix."""
    latents = np.asarray(latents, dtype=np.float64)
    return [fit_binner(latents[:, dimension], n_bins) for dimension in range(latents.shape[1])]


def target_distribution(binner, values):
    """
    Normalized histogram of the quantized `values`.

    Raises
    ------
    ValueError
        If `values` is empty.
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    if len(values) == 0:
        raise ValueError("target distribution of an empty set of values")

    counts = np.bincount(binner.quantize(values), minlength=binner.n_bins)
    return counts/len(values)


def binner_blocks(binners):
    """Checkpoint block with one (mu, sigma, n_bins) row per binner."""
    return np.array([[binner.mu, binner.sigma, binner.n_bins] for binner in binners], dtype=np.float64)


def binners_from_block(block):
    return [GaussianBinner(mu, sigma, int(n_bins)) for mu, sigma, n_bins in np.asarray(block)]
