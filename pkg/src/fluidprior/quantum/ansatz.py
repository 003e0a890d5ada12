from __future__ import absolute_import, division, print_function, unicode_literals

import numpy as np

from .statevector import init_state, apply_ry, apply_cz, born_probabilities
from ..exceptions import ShapeError


class LayeredAnsatz(object):
    """
    Hardware-efficient circuit: every layer applies ``Ry`` to all qubits,
    then CZ on a ring of neighbouring pairs.

    The ring is ``(0, 1), (1, 2), ..., (n-1, 0)``. Two qubits share a single
    pair and a single qubit has no entangler, so every edge is entangled
    exactly once per layer.

    Parameters
    ----------
    n_qubits : int
    n_layers : int

    Attributes
    ----------
    pairs : list of tuple
        The CZ pairs of one layer.
    """
    def __init__(self, n_qubits, n_layers):
        if n_qubits < 1 or n_layers < 1:
            raise ValueError("an ansatz needs at least one qubit and one layer")

        self.n_qubits = int(n_qubits)
        self.n_layers = int(n_layers)

        if self.n_qubits == 1:
            self.pairs = []
        elif self.n_qubits == 2:
            self.pairs = [(0, 1)]
        else:
            self.pairs = [(qubit, (qubit + 1) % self.n_qubits) for qubit in range(self.n_qubits)]


    @property
    def parameter_shape(self):
        return (self.n_layers, self.n_qubits)


    @property
    def n_parameters(self):
        return self.n_layers*self.n_qubits


    def initial_parameters(self, rng, scale=0.1):
        """Angles uniform in ``[-scale, scale]``."""
        return rng.uniform(-scale, scale, size=self.parameter_shape)


    def check_parameters(self, params, batched=False):
        params = np.asarray(params, dtype=np.float64)
        shape = params.shape[1:] if batched else params.shape
        if shape != self.parameter_shape:
            raise ShapeError("ansatz parameters must have shape {}, got {}".format(self.parameter_shape, params.shape))
        if not np.all(np.isfinite(params)):
            raise ValueError("ansatz parameters must be finite")
        return params


    def __repr__(self):
        return "LayeredAnsatz(n_qubits={}, n_layers={})".format(self.n_qubits, self.n_layers)



def _prepare(ansatz, prelude, batch):
    state = init_state(ansatz.n_qubits, batch=batch)
    for qubit in (prelude or []):
        apply_ry(state, qubit, np.pi)
    return state


def _layers(ansatz, state, params):
    # params is (L, n) for a single state or (B, L, n) for a batch
    for layer in range(ansatz.n_layers):
        for qubit in range(ansatz.n_qubits):
            apply_ry(state, qubit, params[..., layer, qubit])
        for qubit_1, qubit_2 in ansatz.pairs:
            apply_cz(state, qubit_1, qubit_2)
    return state


def run_ansatz(ansatz, params, prelude=None):
    """
    Run the circuit from ``|0...0>``.

    Parameters
    ----------
    ansatz : LayeredAnsatz
    params : array
        Angles, shape (n_layers, n_qubits).
    prelude : {list of int, None}, optional
        Qubits flipped with ``Ry(pi)`` before the first layer.

    Returns
    -------
    state : StateVector
    """
    params = ansatz.check_parameters(params)
    return _layers(ansatz, _prepare(ansatz, prelude, None), params)


def run_ansatz_batch(ansatz, params, prelude=None):
    """
    Run a batch of parameter sets (B, n_layers, n_qubits) at once.

    `prelude` is a single list of qubits shared by the batch, or a list with
    one such list per state. Returns the batched state.
    """
    params = ansatz.check_parameters(params, batched=True)
    batch = len(params)

    if prelude and isinstance(prelude[0], (list, tuple, np.ndarray)):
        if len(prelude) != batch:
            raise ShapeError("got {} preludes for a batch of {}".format(len(prelude), batch))
        state = init_state(ansatz.n_qubits, batch=batch)
        for qubit in range(ansatz.n_qubits):
            flip = np.array([qubit in qubits for qubits in prelude], dtype=bool)
            if flip.any():
                apply_ry(state, qubit, np.where(flip, np.pi, 0.))
    else:
        state = _prepare(ansatz, prelude, batch)

    return _layers(ansatz, state, params)


def circuit_probabilities(ansatz, params, prelude=None):
    """Born probabilities of :py:func:`run_ansatz`."""
    return born_probabilities(run_ansatz(ansatz, params, prelude))


def parameter_shift_jacobian(ansatz, params, prelude=None):
    """
    Exact derivative of every Born probability with respect to every angle.

    Each angle is shifted by ``+pi/2`` and ``-pi/2`` and
    ``dp/dtheta = (p(theta + pi/2) - p(theta - pi/2))/2``. All ``2 P``
    shifted circuits run as one batch.

    Parameters
    ----------
    ansatz : LayeredAnsatz
    params : array
        Angles, shape (n_layers, n_qubits).
    prelude : {list of int, None}, optional

    Returns
    -------
    jacobian : array
        Shape (2**n_qubits, n_layers, n_qubits).
    """
    params = ansatz.check_parameters(params)
    count = ansatz.n_parameters

    shifts = np.zeros((2*count,) + ansatz.parameter_shape)
    flat = shifts.reshape(2*count, count)
    flat[np.arange(count), np.arange(count)] = np.pi/2
    flat[count + np.arange(count), np.arange(count)] = -np.pi/2

    probabilities = born_probabilities(run_ansatz_batch(ansatz, params[None] + shifts, prelude))
    jacobian = 0.5*(probabilities[:count] - probabilities[count:])

    return jacobian.T.reshape((-1,) + ansatz.parameter_shape)
