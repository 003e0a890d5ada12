from __future__ import absolute_import, division, print_function, unicode_literals

import numpy as np

from .d2q9 import CS
from ..exceptions import ConfigurationError


class ObstacleMask(object):
    """
    Boolean grid marking the solid nodes of an obstacle.

    Parameters
    ----------
    solid : array_like
        nx × ny boolean array, True at solid nodes.

    Attributes
    ----------
    solid : array
        The mask.
    """
    def __init__(self, solid):
        self.solid = np.asarray(solid, dtype=bool)

        if self.solid.ndim != 2:
            raise ValueError("ObstacleMask must be two-dimensional, got shape {}".format(self.solid.shape))


    @property
    def shape(self):
        return self.solid.shape


    @property
    def fluid(self):
        return ~self.solid


    @classmethod
    def empty(cls, nx, ny):
        """A mask without any solid node."""
        return cls(np.zeros((nx, ny), dtype=bool))


    @classmethod
    def cylinder(cls, nx, ny, cx, cy, radius):
        """
        Circular obstacle: every node with ``(x - cx)^2 + (y - cy)^2 <= radius^2``.
        """
        x, y = np.meshgrid(np.arange(nx), np.arange(ny), indexing="ij")
        return cls((x - cx)**2 + (y - cy)**2 <= radius**2)


    @classmethod
    def from_image(cls, filename, nx, ny, threshold=0.5):
        """
        Build the mask from an image file, dark pixels are solid.

        The image is converted to gray scale and resampled nearest-neighbour
        to nx × ny. Image rows run top to bottom, so the first row becomes
        ``y = ny - 1``.

        Parameters
        ----------
        filename : str
            Any image format matplotlib can read.
        nx, ny : int
            Grid size.
        threshold : float, optional
            Gray values (in [0, 1]) below this are solid. Default is 0.5.
        """
        import matplotlib.image

        image = np.asarray(matplotlib.image.imread(filename), dtype=np.float64)
        if image.max() > 1:
            image = image/255.

        if image.ndim == 3:
            gray = image[:, :, :3].mean(axis=2)
            if image.shape[2] == 4:
                # Transparent pixels count as fluid
                gray = np.where(image[:, :, 3] < 0.5, 1.0, gray)
        else:
            gray = image

        rows, columns = gray.shape
        row_index = ((np.arange(ny) + 0.5)*rows/ny).astype(int)
        column_index = ((np.arange(nx) + 0.5)*columns/nx).astype(int)

        resampled = gray[row_index[::-1]][:, column_index]

        return cls((resampled < threshold).T)


    def __or__(self, other):
        return ObstacleMask(self.solid | getattr(other, "solid", other))


    def __eq__(self, other):
        return isinstance(other, ObstacleMask) and np.array_equal(self.solid, other.solid)


    def __ne__(self, other):
        return not self == other



def wall_mask(nx, ny, walls):
    """
    Solid nodes of the domain walls.

    Parameters
    ----------
    nx, ny : int
        Grid size.
    walls : {"channel", "closed", "none"}
        "channel" makes the bottom and top rows solid, "closed" also the first
        and last columns, "none" gives a fully periodic domain.
    """
    solid = np.zeros((nx, ny), dtype=bool)
    if walls in ("channel", "closed"):
        solid[:, 0] = True
        solid[:, -1] = True
    if walls == "closed":
        solid[0, :] = True
        solid[-1, :] = True
    elif walls not in ("channel", "none"):
        raise ConfigurationError("walls must be 'channel', 'closed' or 'none', not {}".format(walls), key="walls")

    return solid


class LatticeConfig(object):
    """
    Physical and numerical parameters of a channel flow simulation.

    The relaxation time follows from the Reynolds number,
    ``tau = 3 u_inlet diameter / reynolds + 0.5``. If `tau` is given
    together with a Reynolds number the two must agree.

    Parameters
    ----------
    nx, ny : int
        Number of nodes along x and y.
    u_inlet : float
        Inlet speed in lattice units, below 0.2.
    reynolds : {float, None}, optional
        Reynolds number based on `diameter`. Either `reynolds` or `tau` must
        be given.
    diameter : float, optional
        Characteristic length of the obstacle in nodes. Default is 32.
    tau : {float, None}, optional
        Relaxation time, above 0.5.
    obstacle : {ObstacleMask, None}, optional
        The obstacle. Must leave the inlet column free when `inflow` is True.
    walls : {"channel", "closed", "none"}, optional
        Bounce-back walls, see :py:func:`wall_mask`. Default is "channel".
    inflow : bool, optional
        Impose the inlet equilibrium on the first column. Default is True.
    outflow : bool, optional
        Copy the penultimate column into the last. Default is True.
    body_force : tuple, optional
        Constant force density ``(Fx, Fy)``. Default is (0, 0).
    probe : {tuple, None}, optional
        Node ``(x, y)`` whose uy is recorded during snapshot collection.

    Raises
    ------
    ConfigurationError
        If a parameter violates the stability or low Mach bounds, or the
        parameters are inconsistent.
    """
    def __init__(self,
                 nx,
                 ny,
                 u_inlet,
                 reynolds=None,
                 diameter=32,
                 tau=None,
                 obstacle=None,
                 walls="channel",
                 inflow=True,
                 outflow=True,
                 body_force=(0.0, 0.0),
                 probe=None):

        self.nx = int(nx)
        self.ny = int(ny)
        self.u_inlet = float(u_inlet)
        self.diameter = float(diameter)
        self.walls = walls
        self.inflow = bool(inflow)
        self.outflow = bool(outflow)
        self.body_force = (float(body_force[0]), float(body_force[1]))
        self.probe = probe

        if self.nx < 3 or self.ny < 3:
            raise ConfigurationError("grid must be at least 3 × 3, got {} × {}".format(self.nx, self.ny), key="nx")

        if not 0 <= self.u_inlet < 0.2:
            raise ConfigurationError("u_inlet = {} must lie in [0, 0.2)".format(self.u_inlet), key="u_inlet")

        if reynolds is None and tau is None:
            raise ConfigurationError("either reynolds or tau is required", key="reynolds")

        if reynolds is not None:
            if reynolds <= 0:
                raise ConfigurationError("reynolds must be positive, got {}".format(reynolds), key="reynolds")

            derived_tau = 3*self.u_inlet*self.diameter/reynolds + 0.5
            if tau is not None and not np.isclose(tau, derived_tau, rtol=1e-12, atol=0):
                raise ConfigurationError("tau = {} is inconsistent with reynolds = {} (expected {})".format(tau, reynolds, derived_tau),
                                         key="tau")
            tau = derived_tau
        elif self.u_inlet > 0:
            reynolds = 3*self.u_inlet*self.diameter/(tau - 0.5) if tau > 0.5 else None

        self.tau = float(tau)
        self.reynolds = reynolds

        if self.tau <= 0.5:
            raise ConfigurationError("tau = {} violates the BGK stability bound tau > 0.5".format(self.tau), key="tau")

        if obstacle is None:
            obstacle = ObstacleMask.empty(self.nx, self.ny)
        if obstacle.shape != (self.nx, self.ny):
            raise ConfigurationError("obstacle shape {} does not match grid {} × {}".format(obstacle.shape, self.nx, self.ny),
                                     key="obstacle")
        if self.inflow and obstacle.solid[0].any():
            raise ConfigurationError("obstacle intersects the inlet column", key="obstacle")
        self.obstacle = obstacle

        self.wall_solid = wall_mask(self.nx, self.ny, walls)


    @classmethod
    def cylinder(cls,
                 nx=256,
                 ny=64,
                 radius=16,
                 reynolds=500,
                 mach=0.1,
                 u_inlet=None,
                 center=None,
                 **kwargs):
        """
        Channel flow around a circular cylinder.

        Parameters
        ----------
        nx, ny : int, optional
            Grid size. Default is 256 × 64.
        radius : int, optional
            Cylinder radius in nodes, the diameter sets the Reynolds number.
            Default is 16.
        reynolds : float, optional
            Default is 500.
        mach : float, optional
            Inlet Mach number relative to the lattice speed of sound, used when
            `u_inlet` is None. Default is 0.1, i.e. u_inlet = 0.1/sqrt(3).
        u_inlet : {float, None}, optional
            Inlet speed in lattice units, overrides `mach`.
        center : {tuple, None}, optional
            Cylinder centre. Default is ``(nx//4, ny//2)``, half a node off
            the channel midline.
        **kwargs
            Passed on to :py:class:`LatticeConfig`.
        """
        if u_inlet is None:
            u_inlet = mach*CS

        if center is None:
            center = (nx//4, ny//2)

        diameter = 2*radius
        obstacle = ObstacleMask.cylinder(nx, ny, center[0], center[1], radius)

        kwargs.setdefault("probe", (min(int(center[0] + 2*diameter), nx - 2), center[1]))

        return cls(nx=nx, ny=ny, u_inlet=u_inlet, reynolds=reynolds,
                   diameter=diameter, obstacle=obstacle, **kwargs)


    @property
    def solid(self):
        """Boolean mask of every solid node, obstacle and walls."""
        return self.obstacle.solid | self.wall_solid


    @property
    def fluid(self):
        return ~self.solid


    @property
    def viscosity(self):
        """Kinematic viscosity ``(tau - 0.5)/3``."""
        return (self.tau - 0.5)/3.


    @property
    def channel_height(self):
        """Open height of the channel: ``ny`` less any bounce-back wall rows."""
        return self.ny - 2 if self.walls in ("channel", "closed") else self.ny


    def to_dict(self):
        """Scalar parameters, as written to run manifests and logs."""
        return {"nx": self.nx,
                "ny": self.ny,
                "u_inlet": self.u_inlet,
                "reynolds": self.reynolds,
                "diameter": self.diameter,
                "tau": self.tau,
                "walls": self.walls,
                "inflow": self.inflow,
                "outflow": self.outflow,
                "body_force": list(self.body_force)}
