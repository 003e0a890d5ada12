from __future__ import absolute_import, division, print_function, unicode_literals

import matplotlib
matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import seaborn as sns


axis_grey = (0.6, 0.6, 0.6)
ticksize = 5
markersize = 4
markeredgewidth = 0.6
figure_width = 7.08
labelsize = 10
titlesize = 12
fontsize = 8
ticklabelsize = 8
linewidth = 1.4
figsize = (figure_width, figure_width*0.75)


def set_figuresize():
    """Set the figure size, 180 mm wide with a 4:3 aspect."""
    plt.rcParams.update({"figure.figsize": figsize})


def set_legendstyle():
    params = {"legend.frameon": True,
              "legend.numpoints": 1,
              "legend.scatterpoints": 1,
              "legend.fontsize": fontsize,
              "legend.handlelength": 2.2,
              "legend.borderpad": 0.5,
              "legend.framealpha": 1,
              "legend.fancybox": True}
    plt.rcParams.update(params)


def set_font():
    plt.rcParams.update({"text.antialiased": True,
                         "font.family": "serif",
                         "font.weight": "normal"})


def set_linestyle():
    plt.rcParams.update({"lines.linewidth": linewidth,
                         "lines.linestyle": "solid",
                         "lines.marker": "None",
                         "lines.antialiased": True,
                         "lines.markersize": markersize,
                         "lines.markeredgewidth": markeredgewidth})


def set_tickstyle():
    plt.rcParams.update({"xtick.color": axis_grey,
                         "ytick.color": axis_grey,
                         "xtick.major.size": ticksize,
                         "ytick.major.size": ticksize,
                         "xtick.labelsize": ticklabelsize,
                         "ytick.labelsize": ticklabelsize})


def set_axestyle():
    plt.rcParams.update({"axes.titlesize": titlesize,
                         "axes.labelsize": labelsize,
                         "axes.edgecolor": axis_grey,
                         "axes.labelcolor": "black",
                         "axes.linewidth": 1,
                         "axes.spines.right": False,
                         "axes.spines.top": False,
                         "axes.unicode_minus": True})


def set_svgstyle():
    """Reproducible SVG output: fixed id salt and text as paths."""
    plt.rcParams.update({"svg.hashsalt": "fluidprior",
                         "svg.fonttype": "path"})


def reset_style():
    plt.rcdefaults()


def spines_color(ax, edges={"top": "None", "bottom": axis_grey,
                            "right": "None", "left": axis_grey}):
    """Set the color of each spine in `edges`."""
    for edge, color in edges.items():
        ax.spines[edge].set_edgecolor(color)


def remove_ticks(ax):
    """Remove ticks from the right y axis and the top x axis."""
    ax.tick_params(axis="x", which="both", bottom=True, top=False,
                   labelbottom=True, color=axis_grey, labelcolor="black",
                   labelsize=labelsize)

    ax.tick_params(axis="y", which="both", right=False, left=True,
                   labelleft=True, color=axis_grey, labelcolor="black",
                   labelsize=labelsize)


def set_title(title, ax):
    ax.set_title(title, fontsize=titlesize)


def set_xlabel(xlabel, ax, color="black"):
    ax.set_xlabel(xlabel, fontsize=labelsize, color=color)


def set_ylabel(ylabel, ax, color="black"):
    ax.set_ylabel(ylabel, fontsize=labelsize, color=color)


def set_style(style="darkgrid", nr_colors=6, palette="hls", custom=True):
    """
    Set the style of the following plots.

    Parameters
    ----------
    style : {"darkgrid", "whitegrid", "dark", "white", "ticks"}, optional
        Seaborn base style. Default is "darkgrid".
    nr_colors : int, optional
        Number of colors in the palette. Default is 6.
    palette : str, optional
        Seaborn palette name. Default is "hls".
    custom : bool, optional
        Apply the fluidprior font, line, tick, legend and axes settings on top
        of the base style. Default is True.
    """
    sns.set_style(style)
    sns.set_palette(palette, n_colors=nr_colors)

    if custom:
        set_font()
        set_linestyle()
        set_tickstyle()
        set_legendstyle()
        set_figuresize()
        set_axestyle()

    set_svgstyle()


def create_figure(style="darkgrid", nr_colors=6, palette="hls", custom_style=True):
    """Close the current figure and return the axis of a new one."""
    plt.close("all")

    set_style(style=style, nr_colors=nr_colors, palette=palette, custom=custom_style)

    plt.figure()
    return plt.subplot(111)


def _color(color):
    if isinstance(color, int):
        return sns.color_palette()[color % len(sns.color_palette())]
    return color


def prettyPlot(x=[], y=None,
               title="",
               xlabel="",
               ylabel="",
               color=None,
               style="darkgrid",
               palette="hls",
               nr_colors=6,
               ax=None,
               new_figure=True,
               zorder=3,
               **kwargs):
    """
    Line plot in the house style.

    Parameters
    ----------
    x : array_like
        x values, or the y values if `y` is None.
    y : {array_like, None}, optional
    title, xlabel, ylabel : str, optional
    color : {int, matplotlib color}, optional
        An int picks that color from the current palette.
    ax : {matplotlib axis, None}, optional
        Axis to plot on.
    new_figure : bool, optional
        Create a new figure when no axis is given. Default is True.
    **kwargs
        Passed on to ``ax.plot``.

    Returns
    -------
    ax : matplotlib axis
    """
    if ax is None:
        ax = create_figure(style=style, nr_colors=nr_colors, palette=palette) if new_figure else plt.gca()

    if len(x) == 0:
        return ax

    remove_ticks(ax)
    set_title(title, ax)
    set_xlabel(xlabel, ax)
    set_ylabel(ylabel, ax)

    if y is None:
        y = x
        x = range(len(y))

    ax.plot(x, y, color=_color(color), zorder=zorder, **kwargs)
    ax.yaxis.offsetText.set_fontsize(labelsize)

    return ax


def prettyBar(x,
              index=None,
              color=None,
              title="",
              xlabels=[],
              ylabel="",
              width=0.6,
              ax=None,
              new_figure=True,
              style="dark",
              palette="hls",
              nr_colors=6,
              **kwargs):
    """
    Bar plot in the house style.

    Returns
    -------
    ax : matplotlib axis
    bars : BarContainer
        The bars, so callers can tag the individual patches.
    """
    if ax is None:
        ax = create_figure(style=style, nr_colors=nr_colors, palette=palette) if new_figure else plt.gca()

    spines_color(ax)
    remove_ticks(ax)

    if index is None:
        index = np.arange(len(x))

    colors = sns.color_palette()[:len(x)] if color is None else _color(color)

    bars = ax.bar(index, x, color=colors, width=width, linewidth=0,
                  edgecolor=axis_grey, align="center", **kwargs)

    ax.set_xticks(index)
    ax.set_xticklabels(xlabels, fontsize=labelsize, rotation=0)

    set_title(title, ax)
    set_ylabel(ylabel, ax)

    return ax, bars


def prettyScatter(x, y,
                  title="",
                  xlabel="",
                  ylabel="",
                  color=None,
                  label=None,
                  ax=None,
                  new_figure=True,
                  style="darkgrid",
                  palette="hls",
                  nr_colors=6,
                  **kwargs):
    """Scatter plot in the house style, returns the axis and the collection."""
    if ax is None:
        ax = create_figure(style=style, nr_colors=nr_colors, palette=palette) if new_figure else plt.gca()

    remove_ticks(ax)
    set_title(title, ax)
    set_xlabel(xlabel, ax)
    set_ylabel(ylabel, ax)

    collection = ax.scatter(x, y, color=_color(color), label=label, s=markersize**2,
                            linewidths=0, **kwargs)
    return ax, collection


def prettyImage(field,
                title="",
                xlabel="x",
                ylabel="y",
                cmap="RdBu_r",
                symmetric=False,
                ax=None,
                colorbar_label=""):
    """
    Map of a 2D field indexed ``[x, y]``, with y pointing up.

    Parameters
    ----------
    field : array
        Values, shape (nx, ny). Masked or nan entries are left blank.
    symmetric : bool, optional
        Center the color scale on zero. Default is False.

    Returns
    -------
    ax : matplotlib axis
    image : AxesImage
    """
    if ax is None:
        ax = create_figure(style="white")

    field = np.ma.masked_invalid(np.asarray(field, dtype=np.float64))
    limits = {}
    if symmetric and field.count():
        bound = np.abs(field).max()
        limits = {"vmin": -bound, "vmax": bound}

    image = ax.imshow(field.T, origin="lower", cmap=cmap, interpolation="nearest", aspect="equal", **limits)
    colorbar = plt.colorbar(image, ax=ax, fraction=0.025, pad=0.02)
    colorbar.set_label(colorbar_label, fontsize=fontsize)

    set_title(title, ax)
    set_xlabel(xlabel, ax)
    set_ylabel(ylabel, ax)

    return ax, image
