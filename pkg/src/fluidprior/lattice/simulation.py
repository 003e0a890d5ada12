from __future__ import absolute_import, division, print_function, unicode_literals

import numpy as np
from tqdm import tqdm

from .kernels import (_equilibrium, collide, propagate, bounce_back, apply_inflow,
                      apply_outflow, compute_macroscopics, compute_vorticity)
from ..base import Base
from ..exceptions import NumericalError
from ..utils.utility import compensated_sum


def initial_field(config):
    """
    Equilibrium at ``rho = 1``, ``u = (u_inlet, 0)`` on every node.

    Returns
    -------
    f : array
        Populations of shape (9, nx, ny).
    """
    rho = np.ones((config.nx, config.ny))
    return _equilibrium(rho, config.u_inlet, 0.0)


def total_mass(f):
    """Sum of all populations, order independent (``math.fsum``)."""
    return compensated_sum(f)


def _step(f, config, solid, fluid, step_index):
    if config.inflow:
        f = apply_inflow(f, config.u_inlet)

    fields = compute_macroscopics(f, fluid=fluid, step=step_index)

    ux, uy = fields.ux, fields.uy
    if config.body_force != (0.0, 0.0):
        # Velocity shift forcing, u_eq = u + tau F/rho
        positive = fields.rho > 0
        ux = ux + np.divide(config.tau*config.body_force[0], fields.rho,
                            out=np.zeros_like(fields.rho), where=positive)
        uy = uy + np.divide(config.tau*config.body_force[1], fields.rho,
                            out=np.zeros_like(fields.rho), where=positive)

    f_eq = _equilibrium(fields.rho, ux, uy)

    f = collide(f, f_eq, config.tau, fluid=fluid)
    f = bounce_back(f, solid)
    f = propagate(f)

    if config.outflow:
        f = apply_outflow(f)

    return f


def simulate_step(f, config, step_index=0):
    """
    One full lattice update:
    inflow, macroscopics, equilibrium, collide, bounce-back, propagate and
    outflow copy, in that order. Inflow and outflow are skipped when disabled
    in `config`.

    Parameters
    ----------
    f : array
        Populations, shape (9, nx, ny).
    config : LatticeConfig
        The simulation parameters.
    step_index : int, optional
        Index of the step, reported if the lattice blows up.

    Returns
    -------
    f : array
        The updated populations.

    Raises
    ------
    NumericalError
        If the populations become non-finite or the density non-positive.
    """
    solid = config.solid
    return _step(f, config, solid, ~solid, step_index)


class LatticeSimulation(Base):
    """
    Time stepping of a D2Q9 channel flow and collection of vorticity
    snapshots.

    Parameters
    ----------
    config : LatticeConfig
        Physical and numerical parameters.
    logger_level : {"info", "debug", "warning", "error", "critical", None}, optional
        Set the threshold for the logging level. Logging messages less severe
        than this level is ignored. Default logger level is "info".

    Attributes
    ----------
    config : LatticeConfig
        The simulation parameters.
    f : array
        Current populations.
    step_index : int
        Number of steps taken.
    probe_series : list
        uy at the probe node, one value per step after warm-up.
    """
    def __init__(self, config, logger_level="info"):
        super(LatticeSimulation, self).__init__(logger_level=logger_level)

        self.config = config
        self.solid = config.solid
        self.fluid = ~self.solid

        self.reset()


    def reset(self):
        """Return to the initial equilibrium."""
        self.f = initial_field(self.config)
        self.step_index = 0
        self.probe_series = []


    def step(self):
        """Advance one step."""
        self.f = _step(self.f, self.config, self.solid, self.fluid, self.step_index)
        self.step_index += 1
        return self.f


    def run(self, steps, desc="Running lattice"):
        """Advance `steps` steps."""
        for _ in tqdm(range(steps), desc=desc, disable=self.quiet or steps < 100):
            self.step()
        return self.f


    def fields(self):
        """Macroscopic fields of the current populations."""
        return compute_macroscopics(self.f, fluid=self.fluid, step=self.step_index)


    def vorticity(self):
        """Vorticity snapshot of the current populations."""
        return compute_vorticity(self.fields(), solid=self.solid, step_index=self.step_index)


    def mass(self):
        return total_mass(self.f)


    def _record_probe(self):
        if self.config.probe is not None:
            x, y = self.config.probe
            fields = self.fields()
            self.probe_series.append(float(fields.uy[x, y]))


    def collect_snapshots(self, warmup=5000, interval=10, count=1999):
        """
        Run `warmup` steps, then record a vorticity snapshot right away and
        after every further `interval` steps until `count` are collected.

        Parameters
        ----------
        warmup : int, optional
            Steps before the first snapshot. Default is 5000.
        interval : int, optional
            Steps between snapshots. Default is 10.
        count : int, optional
            Number of snapshots. Default is 1999.

        Returns
        -------
        snapshots : list of VorticitySnapshot

        Raises
        ------
        ValueError
            If `count` < 1 or `interval` < 1.
        NumericalError
            If the lattice blows up. No partial dataset is returned.
        """
        if count < 1:
            raise ValueError("count must be at least 1, got {}".format(count))
        if interval < 1:
            raise ValueError("interval must be at least 1, got {}".format(interval))

        logger = self.logger
        logger.info("Simulating {} × {} lattice, tau = {:.6f}, u_inlet = {:.6f}".format(
            self.config.nx, self.config.ny, self.config.tau, self.config.u_inlet))

        total = warmup + (count - 1)*interval
        snapshots = []

        try:
            with tqdm(total=total, desc="Collecting snapshots", disable=self.quiet) as progress:
                for _ in range(warmup):
                    self.step()
                    progress.update()

                snapshots.append(self.vorticity())
                self._record_probe()

                while len(snapshots) < count:
                    for _ in range(interval):
                        self.step()
                        self._record_probe()
                        progress.update()

                    snapshots.append(self.vorticity())
        except NumericalError as error:
            logger.error("Snapshot collection aborted, {} partial snapshots discarded".format(len(snapshots)))
            raise error

        return snapshots



def collect_snapshots(config, warmup=5000, interval=10, count=1999, logger_level="info"):
    """
    Convenience wrapper around :py:meth:`LatticeSimulation.collect_snapshots`.

    Returns
    -------
    snapshots : list of VorticitySnapshot
    """
    simulation = LatticeSimulation(config, logger_level=logger_level)
    return simulation.collect_snapshots(warmup=warmup, interval=interval, count=count)


def snapshot_array(snapshots):
    """Stack snapshots into a ``count × nx × ny`` float64 array."""
    return np.stack([snapshot.omega for snapshot in snapshots]).astype(np.float64)
