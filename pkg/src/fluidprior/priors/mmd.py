from __future__ import absolute_import, division, print_function, unicode_literals

import numpy as np

from .binner import N_BINS, standard_representatives
from ..quantum import circuit_probabilities, parameter_shift_jacobian


class MmdKernel(object):
    """
    Sum of Gaussian kernels over the standardized bin representatives.

    ``K[b, c] = sum_s exp(-(x_b - x_c)^2/(2 s^2))`` with
    ``x_b = ndtri((b + 0.5)/n_bins)``.

    Parameters
    ----------
    bandwidths : sequence of float, optional
        Default is (0.25, 0.5, 1.0).
    n_bins : int, optional
        Default is 256.

    Attributes
    ----------
    gram : array
        The (n_bins, n_bins) kernel matrix.
    """
    def __init__(self, bandwidths=(0.25, 0.5, 1.0), n_bins=N_BINS):
        bandwidths = [float(bandwidth) for bandwidth in bandwidths]
        if not bandwidths or min(bandwidths) <= 0:
            raise ValueError("kernel bandwidths must be positive, got {}".format(bandwidths))

        self.bandwidths = bandwidths
        self.n_bins = n_bins

        x = standard_representatives(n_bins)
        squared = (x[:, None] - x[None, :])**2
        self.gram = sum(np.exp(-squared/(2*bandwidth**2)) for bandwidth in bandwidths)


    def __array__(self, dtype=None):
        return self.gram if dtype is None else self.gram.astype(dtype)



def _gram(kernel):
    return kernel.gram if isinstance(kernel, MmdKernel) else np.asarray(kernel, dtype=np.float64)


def mmd2(p, q, kernel):
    """
    Squared maximum mean discrepancy ``(p - q)^T K (p - q)`` between two
    distributions over the same bins.
    """
    difference = np.asarray(p, dtype=np.float64) - np.asarray(q, dtype=np.float64)
    return float(difference @ _gram(kernel) @ difference)


def mmd_gradient(ansatz, params, q, kernel, prelude=None):
    """
    Gradient of ``mmd2(p(params), q)`` with respect to the circuit angles.

    The Born distribution ``p`` is differentiated with the parameter-shift
    rule, ``grad = 2 (p - q)^T K J``.

    Parameters
    ----------
    ansatz : LayeredAnsatz
    params : array
        Angles, shape (n_layers, n_qubits).
    q : array
        Target distribution over ``2**n_qubits`` bins.
    kernel : {MmdKernel, array}
    prelude : {list of int, None}, optional

    Returns
    -------
    loss : float
        The MMD² at `params`.
    gradient : array
        Shape (n_layers, n_qubits).
    """
    gram = _gram(kernel)
    p = circuit_probabilities(ansatz, params, prelude)
    difference = p - np.asarray(q, dtype=np.float64)

    jacobian = parameter_shift_jacobian(ansatz, params, prelude)
    gradient = np.tensordot(2*(difference @ gram), jacobian, axes=(0, 0))

    return float(difference @ gram @ difference), gradient
