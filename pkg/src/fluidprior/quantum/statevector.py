"""
Dense state-vector simulation of real-amplitude circuits.

Basis index ``k`` encodes qubit ``q`` in bit ``q``, so qubit 0 is the least
significant bit. A :py:class:`StateVector` may carry a leading batch axis, in
which case every gate is applied to all states of the batch, optionally with
a different angle per state.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import numpy as np

from ..utils.utility import make_rng


MAX_QUBITS = 24


class StateVector(object):
    """
    Amplitudes of an n-qubit register as two parallel real arrays.

    Parameters
    ----------
    real, imag : array
        Real and imaginary parts, shape (2**n,) or (batch, 2**n).

    Attributes
    ----------
    n_qubits : int
    """
    def __init__(self, real, imag=None):
        self.real = np.ascontiguousarray(real, dtype=np.float64)
        self.imag = np.zeros_like(self.real) if imag is None else np.ascontiguousarray(imag, dtype=np.float64)

        if self.real.shape != self.imag.shape:
            raise ValueError("real and imaginary parts differ in shape")

        size = self.real.shape[-1]
        self.n_qubits = int(size).bit_length() - 1
        if 2**self.n_qubits != size:
            raise ValueError("amplitude count {} is not a power of two".format(size))


    @property
    def batched(self):
        return self.real.ndim == 2


    def __len__(self):
        return self.real.shape[-1]


    def copy(self):
        return StateVector(self.real.copy(), self.imag.copy())


    def norm(self):
        """Sum of squared amplitude magnitudes (per state of a batch)."""
        return (self.real**2 + self.imag**2).sum(axis=-1)


    def amplitudes(self):
        return self.real + 1j*self.imag



def init_state(n_qubits, batch=None):
    """
    The register in ``|0...0>``.

    Parameters
    ----------
    n_qubits : int
        Number of qubits, 1 to 24.
    batch : {int, None}, optional
        Number of copies along a leading batch axis.

    Returns
    -------
    state : StateVector
    """
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError("number of qubits must be between 1 and {}, got {}".format(MAX_QUBITS, n_qubits))

    shape = (2**n_qubits,) if batch is None else (batch, 2**n_qubits)
    real = np.zeros(shape)
    real[..., 0] = 1
    return StateVector(real)


def _check_qubit(state, qubit):
    if not 0 <= qubit < state.n_qubits:
        raise ValueError("qubit {} out of range for {} qubits".format(qubit, state.n_qubits))


def _pair_view(array, qubit):
    """View with axes (..., high bits, qubit bit, low bits)."""
    low = 2**qubit
    return array.reshape(array.shape[:-1] + (-1, 2, low))


def apply_ry(state, qubit, theta):
    """
    Apply ``Ry(theta) = [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]]``
    to `qubit`, in place.

    Parameters
    ----------
    state : StateVector
    qubit : int
    theta : {float, array}
        Angle in radians, or one angle per state of a batched register.

    Returns
    -------
    state : StateVector
    """
    _check_qubit(state, qubit)

    theta = np.asarray(theta, dtype=np.float64)
    if theta.ndim:
        theta = theta.reshape(theta.shape + (1, 1))
    c = np.cos(theta/2)
    s = np.sin(theta/2)

    for part in (state.real, state.imag):
        view = _pair_view(part, qubit)
        zero = view[..., 0, :].copy()
        one = view[..., 1, :]
        view[..., 0, :] = c*zero - s*one
        view[..., 1, :] = s*zero + c*one

    return state


def apply_cz(state, qubit_1, qubit_2):
    """
    Controlled-Z: negate the amplitudes where both qubits are 1, in place.

    Raises
    ------
    ValueError
        If the two qubits are the same or out of range.
    """
    _check_qubit(state, qubit_1)
    _check_qubit(state, qubit_2)
    if qubit_1 == qubit_2:
        raise ValueError("CZ needs two distinct qubits, got {} twice".format(qubit_1))

    index = np.arange(len(state))
    both = ((index >> qubit_1) & 1).astype(bool) & ((index >> qubit_2) & 1).astype(bool)

    state.real[..., both] *= -1
    state.imag[..., both] *= -1
    return state


def born_probabilities(state):
    """``p_k = |a_k|^2`` over the computational basis, along the last axis."""
    return state.real**2 + state.imag**2


def sample(p, rng=None, count=1):
    """
    Inverse-CDF sampling of basis-state indices.

    Parameters
    ----------
    p : array
        Probabilities, summing to 1 within 1e-9.
    rng : {Generator, int, None}, optional
        Random number generator or seed.
    count : int, optional
        Number of draws. Default is 1.

    Returns
    -------
    indices : array of int

    Raises
    ------
    ValueError
        If `p` is not a normalized probability vector.
    """
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1 or len(p) == 0:
        raise ValueError("probabilities must be a nonempty vector")
    if np.any(p < 0) or abs(p.sum() - 1) > 1e-9:
        raise ValueError("probabilities are not normalized, sum is {:.17g}".format(p.sum()))

    cdf = np.cumsum(p)
    uniform = make_rng(rng).random(count)
    indices = np.searchsorted(cdf, uniform*cdf[-1], side="right")
    return np.minimum(indices, len(p) - 1)
