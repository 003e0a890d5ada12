"""
Figures in the fluidprior house style: report charts with their values
embedded as SVG data attributes, training curves and lattice field maps.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

__all__ = ["PlotReport", "write_svg", "read_svg_attributes"]

from .plot_report import PlotReport, write_svg, read_svg_attributes
