"""
D2Q9 lattice Boltzmann simulation of channel flow past an obstacle.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

__all__ = ["LatticeConfig", "ObstacleMask", "MacroscopicFields", "VorticitySnapshot",
           "compute_equilibrium", "collide", "propagate", "bounce_back", "apply_inflow",
           "apply_outflow", "compute_macroscopics", "compute_vorticity",
           "LatticeSimulation", "simulate_step", "collect_snapshots", "initial_field",
           "total_mass", "snapshot_array", "read_snapshots", "write_snapshots", "snapshot_io",
           "shedding_frequency", "strouhal_number", "poiseuille_profile"]

from .config import LatticeConfig, ObstacleMask
from .kernels import MacroscopicFields, VorticitySnapshot
from .kernels import compute_equilibrium, collide, propagate, bounce_back
from .kernels import apply_inflow, apply_outflow, compute_macroscopics, compute_vorticity
from .simulation import LatticeSimulation, simulate_step, collect_snapshots
from .simulation import initial_field, total_mass, snapshot_array
from .snapshots import read_snapshots, write_snapshots, snapshot_io
from .analysis import shedding_frequency, strouhal_number, poiseuille_profile
