"""
State-vector simulation of layered Ry/CZ circuits.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

__all__ = ["StateVector", "init_state", "apply_ry", "apply_cz", "born_probabilities", "sample",
           "LayeredAnsatz", "run_ansatz", "run_ansatz_batch", "circuit_probabilities",
           "parameter_shift_jacobian"]

from .statevector import StateVector, init_state, apply_ry, apply_cz, born_probabilities, sample
from .ansatz import (LayeredAnsatz, run_ansatz, run_ansatz_batch, circuit_probabilities,
                     parameter_shift_jacobian)
