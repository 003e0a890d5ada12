"""
Validation helpers: shedding frequency from a probe signal and the analytic
Poiseuille profile.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import numpy as np


def shedding_frequency(series, sample_interval=1):
    """
    Dominant frequency of a probe signal, in cycles per lattice step.

    The mean is removed and the peak of the real FFT is refined by a
    parabolic fit through the neighbouring bins.

    Parameters
    ----------
    series : array_like
        Probe samples.
    sample_interval : int, optional
        Lattice steps between samples. Default is 1.

    Returns
    -------
    frequency : float
    """
    series = np.asarray(series, dtype=np.float64)
    if series.size < 4:
        raise ValueError("need at least 4 samples to estimate a frequency, got {}".format(series.size))

    spectrum = np.abs(np.fft.rfft(series - series.mean()))
    spectrum[0] = 0
    peak = int(np.argmax(spectrum))

    offset = 0.
    if 0 < peak < len(spectrum) - 1:
        left, center, right = spectrum[peak - 1], spectrum[peak], spectrum[peak + 1]
        denominator = left - 2*center + right
        if denominator != 0:
            offset = 0.5*(left - right)/denominator

    return (peak + offset)/(series.size*sample_interval)


def strouhal_number(series, diameter, u_inlet, sample_interval=1, height=None):
    """
    St = f D / u for the dominant frequency f of `series`.

    Without `height`, u is the inlet speed. With the open channel `height`
    given, u is the mean speed through the gaps beside the obstacle,
    ``u_inlet*height/(height - diameter)``, which is the reference speed for
    a strongly blocked channel.
    """
    if height is not None:
        if height <= diameter:
            raise ValueError("channel height {} does not exceed the obstacle diameter {}".format(height, diameter))
        u_inlet = u_inlet*height/(height - diameter)
    return shedding_frequency(series, sample_interval)*diameter/u_inlet


def poiseuille_profile(ny, force, tau):
    """
    Analytic velocity profile of a force driven channel with bounce-back
    walls in rows 0 and ny - 1.

    The no-slip planes sit halfway between the wall rows and the first
    fluid rows.

    Parameters
    ----------
    ny : int
        Number of rows including the two wall rows.
    force : float
        Body force along x.
    tau : float
        Relaxation time.

    Returns
    -------
    ux : array
        Velocity at every row, zero in the wall rows.
    """
    viscosity = (tau - 0.5)/3.
    y = np.arange(ny, dtype=np.float64)
    lower, upper = 0.5, ny - 1.5

    ux = force/(2*viscosity)*(y - lower)*(upper - y)
    ux[0] = 0
    ux[-1] = 0
    return ux
