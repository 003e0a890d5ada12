"""
The individual D2Q9 kernels. Each works on whole fields with numpy and has no
state, :py:mod:`fluidprior.lattice.simulation` strings them together.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

from collections import namedtuple

import numpy as np

from .d2q9 import EX, EY, WEIGHTS, OPPOSITE, Q
from ..exceptions import ConfigurationError, NumericalError


MacroscopicFields = namedtuple("MacroscopicFields", ["rho", "ux", "uy"])
"""Density and velocity components, each an nx × ny array."""

VorticitySnapshot = namedtuple("VorticitySnapshot", ["omega", "step_index"])
"""Vorticity field (nx × ny) together with the step it was taken at."""


def _equilibrium(rho, ux, uy):
    rho = np.asarray(rho, dtype=np.float64)
    ux = np.asarray(ux, dtype=np.float64)
    uy = np.asarray(uy, dtype=np.float64)

    shape = np.broadcast(rho, ux, uy).shape
    expand = (slice(None),) + (None,)*len(shape)

    eu = EX[expand]*ux + EY[expand]*uy
    usq = ux*ux + uy*uy

    return WEIGHTS[expand]*rho*(1 + 3*eu + 4.5*eu*eu - 1.5*usq)


def compute_equilibrium(rho, u):
    """
    Second-order D2Q9 equilibrium populations.

    Parameters
    ----------
    rho : {float, array}
        Density, scalar or field.
    u : tuple
        Velocity components ``(ux, uy)``, scalars or fields broadcastable
        against `rho`.

    Returns
    -------
    f_eq : array
        Array of shape ``(9,) + shape`` with
        ``w_i rho (1 + 3 e_i.u + 4.5 (e_i.u)^2 - 1.5 |u|^2)``.

    Raises
    ------
    ValueError
        If any input is non-finite, `rho` is not positive or ``|u| >= 0.4``.
    """
    ux, uy = u
    for name, value in (("rho", rho), ("ux", ux), ("uy", uy)):
        if not np.all(np.isfinite(value)):
            raise ValueError("compute_equilibrium: non-finite {}".format(name))

    if np.any(np.asarray(rho) <= 0):
        raise ValueError("compute_equilibrium: rho must be positive")

    speed = np.sqrt(np.asarray(ux, dtype=np.float64)**2 + np.asarray(uy, dtype=np.float64)**2)
    if np.any(speed >= 0.4):
        raise ValueError("compute_equilibrium: |u| = {} is outside the low Mach range (< 0.4)".format(np.max(speed)))

    return _equilibrium(rho, ux, uy)


def collide(f, f_eq, tau, fluid=None):
    """
    BGK relaxation ``f - (f - f_eq)/tau``.

    Parameters
    ----------
    f, f_eq : array
        Populations and equilibrium populations, shape (9, nx, ny).
    tau : float
        Relaxation time.
    fluid : {array, None}, optional
        Boolean nx × ny mask of fluid nodes. Populations at other nodes are
        returned unchanged. If None every node is fluid.

    Returns
    -------
    f : array
        The post-collision populations (a new array).

    Raises
    ------
    ConfigurationError
        If ``tau <= 0.5``.
    """
    if tau <= 0.5:
        raise ConfigurationError("tau = {} violates the BGK stability bound tau > 0.5".format(tau), key="tau")

    relaxed = f - (f - f_eq)/tau
    if fluid is None:
        return relaxed

    return np.where(fluid[None, :, :], relaxed, f)


def propagate(f):
    """
    Streaming step: population i at (x, y) moves to (x + e_ix, y + e_iy),
    periodically wrapped at the domain edges.

    Inlet, outlet and walls act on top of the periodic wrap, see
    :py:func:`fluidprior.lattice.simulation.simulate_step`.
    """
    streamed = np.empty_like(f)
    for i in range(Q):
        streamed[i] = np.roll(f[i], shift=(EX[i], EY[i]), axis=(0, 1))
    return streamed


def bounce_back(f, solid):
    """
    No-slip rule: at every solid node population i is replaced by the
    population of the opposite direction. Fluid nodes are untouched.

    Parameters
    ----------
    f : array
        Populations, shape (9, nx, ny).
    solid : array
        Boolean nx × ny mask, or an object with a ``solid`` attribute.

    Returns
    -------
    f : array
        New population array.
    """
    solid = getattr(solid, "solid", solid)

    reflected = f.copy()
    reflected[:, solid] = f[OPPOSITE][:, solid]
    return reflected


def apply_inflow(f, u_inlet):
    """
    Replace the populations of the leftmost column by the equilibrium at
    ``rho = 1``, ``u = (u_inlet, 0)``.

    Raises
    ------
    ConfigurationError
        If ``u_inlet >= 0.2``.
    """
    if u_inlet >= 0.2:
        raise ConfigurationError("u_inlet = {} is outside the low Mach range (< 0.2)".format(u_inlet), key="u_inlet")

    inflow = f.copy()
    inflow[:, 0, :] = _equilibrium(1.0, u_inlet, 0.0)[:, None]
    return inflow


def apply_outflow(f):
    """Zero-gradient outflow: the last column copies the penultimate one."""
    outflow = f.copy()
    outflow[:, -1, :] = f[:, -2, :]
    return outflow


def compute_macroscopics(f, fluid=None, step=None):
    """
    Density and velocity moments of the populations.

    Parameters
    ----------
    f : array
        Populations, shape (9, nx, ny).
    fluid : {array, None}, optional
        Boolean mask of fluid nodes where the density must be positive. At
        other nodes with zero density the velocity is set to 0.
    step : {int, None}, optional
        Current step, reported in errors.

    Returns
    -------
    fields : MacroscopicFields
        ``rho = sum_i f_i`` and ``u = sum_i f_i e_i / rho``.

    Raises
    ------
    NumericalError
        If the populations are not finite or the density is not positive at a
        fluid node.
    """
    if not np.all(np.isfinite(f)):
        raise NumericalError("lattice blew up: non-finite populations", step=step)

    rho = f.sum(axis=0)
    jx = np.tensordot(EX.astype(np.float64), f, axes=(0, 0))
    jy = np.tensordot(EY.astype(np.float64), f, axes=(0, 0))

    check = rho if fluid is None else rho[fluid]
    if np.any(check <= 0):
        raise NumericalError("lattice blew up: non-positive density at a fluid node", step=step)

    positive = rho > 0
    ux = np.divide(jx, rho, out=np.zeros_like(rho), where=positive)
    uy = np.divide(jy, rho, out=np.zeros_like(rho), where=positive)

    return MacroscopicFields(rho=rho, ux=ux, uy=uy)


def compute_vorticity(fields, solid=None, step_index=0):
    """
    Scalar vorticity ``d(uy)/dx - d(ux)/dy``.

    Central differences on interior nodes, one-sided differences at the edges,
    zero at solid nodes.

    Parameters
    ----------
    fields : MacroscopicFields
        Velocity fields, at least 3 × 3 nodes.
    solid : {array, None}, optional
        Boolean mask of solid nodes.
    step_index : int, optional
        Step stored in the snapshot.

    Returns
    -------
    snapshot : VorticitySnapshot
    """
    ux = np.asarray(fields.ux, dtype=np.float64)
    uy = np.asarray(fields.uy, dtype=np.float64)

    if ux.shape[0] < 3 or ux.shape[1] < 3:
        raise ValueError("compute_vorticity needs at least 3 × 3 nodes, got {}".format(ux.shape))

    omega = np.gradient(uy, axis=0) - np.gradient(ux, axis=1)

    solid = getattr(solid, "solid", solid)
    if solid is not None:
        omega[solid] = 0

    return VorticitySnapshot(omega=omega, step_index=step_index)
