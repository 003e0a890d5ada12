from __future__ import absolute_import, division, print_function, unicode_literals

import io
import os
from xml.etree import ElementTree

import matplotlib.pyplot as plt
import numpy as np
import seaborn as sns

from .prettyplot import prettyPlot, prettyBar, prettyScatter, prettyImage
from .prettyplot import set_style, reset_style, spines_color, create_figure
from .prettyplot import axis_grey, labelsize, titlesize, fontsize
from ..evaluation.report import MetricsReport
from ..utils.logger import setup_module_logger, get_logger
from ..utils.utility import format_float


SVG_NAMESPACE = "http://www.w3.org/2000/svg"
XLINK_NAMESPACE = "http://www.w3.org/1999/xlink"


def _attribute(value):
    if isinstance(value, (list, tuple, np.ndarray)):
        return " ".join(_attribute(item) for item in np.ravel(value))
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def write_svg(figure, filename, attributes=None):
    """
    Save `figure` as SVG, attaching ``data-*`` attributes to tagged elements.

    Parameters
    ----------
    figure : matplotlib Figure
    filename : str
    attributes : {dict, None}, optional
        Maps an artist gid to a mapping of attribute names (without the
        ``data-`` prefix) to values. Floats are written with 17 significant
        digits, sequences as space separated lists.
    """
    buffer = io.BytesIO()
    figure.savefig(buffer, format="svg", metadata={"Date": None})

    ElementTree.register_namespace("", SVG_NAMESPACE)
    ElementTree.register_namespace("xlink", XLINK_NAMESPACE)
    root = ElementTree.fromstring(buffer.getvalue())

    attributes = attributes or {}
    for element in root.iter():
        gid = element.get("id")
        if gid in attributes:
            for name, value in attributes[gid].items():
                element.set("data-" + name, _attribute(value))

    ElementTree.ElementTree(root).write(filename, encoding="utf-8", xml_declaration=True)


def read_svg_attributes(filename):
    """
    Collect the ``data-*`` attributes of a file written by :py:func:`write_svg`.

    Returns
    -------
    attributes : dict
        Element id to a dict of attribute names (without prefix) to string
        values.
    """
    root = ElementTree.parse(filename).getroot()

    attributes = {}
    for element in root.iter():
        data = {name[5:]: value for name, value in element.attrib.items() if name.startswith("data-")}
        if data:
            attributes[element.get("id")] = data
    return attributes



class PlotReport(object):
    """
    Figures of the comparison report, the training curves and the lattice
    fields.

    Parameters
    ----------
    filename : {None, str}, optional
        Metrics report (HDF5 or Exdir) to load. Default is None.
    folder : str, optional
        The folder where to save the plots. Created if it does not exist.
        Default is "figures/".
    figureformat : str, optional
        Given as ".xxx". With ".svg" the figures carry their numeric values as
        ``data-*`` attributes. Default is ".svg".
    logger_level : {"info", "debug", "warning", "error", "critical", None}, optional
        Default is "info".

    Attributes
    ----------
    folder : str
    figureformat : str
    report : {MetricsReport, None}
    """
    def __init__(self,
                 filename=None,
                 folder="figures/",
                 figureformat=".svg",
                 logger_level="info"):

        self._folder = None

        self.folder = folder
        self.figureformat = figureformat
        self.report = None

        self._logger_level = logger_level
        setup_module_logger(self, level=logger_level)

        if filename is not None:
            self.load(filename)


    def load(self, filename):
        self.report = MetricsReport(filename, logger_level=self._logger_level)


    @property
    def folder(self):
        """
        The folder where to save all plots.

        Parameters
        ----------
        new_folder : str
            Name of new folder where to save all plots. The folder is created
            if it does not exist.
        """
        return self._folder


    @folder.setter
    def folder(self, new_folder):
        self._folder = new_folder

        if new_folder is not None and not os.path.isdir(new_folder):
            os.makedirs(new_folder)


    def save(self, name, attributes=None, figure=None):
        """Save and close the current figure as ``<folder>/<name><figureformat>``."""
        figure = plt.gcf() if figure is None else figure
        filename = os.path.join(self.folder, name + self.figureformat)

        if self.figureformat == ".svg":
            write_svg(figure, filename, attributes)
        else:
            figure.savefig(filename)

        plt.close(figure)
        reset_style()

        get_logger(self).debug("Saved {}".format(filename))
        return filename


    def _get_report(self, report):
        report = self.report if report is None else report
        if report is None:
            raise ValueError("A metrics report must be given or loaded.")
        return report


    def avg_min_distance(self, report=None):
        """Bar chart of the average minimum distance per model."""
        report = self._get_report(report)
        tags = list(report.keys())
        values = [report[tag].avg_min_distance for tag in tags]

        ax, bars = prettyBar(values, xlabels=[tag.upper() for tag in tags],
                             title="Average minimum distance to the reference",
                             ylabel="Euclidean distance")

        attributes = {}
        for tag, bar, value in zip(tags, bars, values):
            gid = "avg_min_distance_{}".format(tag)
            bar.set_gid(gid)
            attributes[gid] = {"model": tag, "value": value}
            ax.text(bar.get_x() + bar.get_width()/2, bar.get_height(), "{:.3f}".format(value),
                    ha="center", va="bottom", fontsize=fontsize)

        return self.save("avg_min_distance", attributes)


    def nearest_neighbors(self, report=None):
        """Bar chart of the nearest-neighbor wins per model, with the tie count."""
        report = self._get_report(report)
        tags = list(report.keys())
        wins = [report[tag].nn_wins for tag in tags]

        ax, bars = prettyBar(wins + [report.ties],
                             xlabels=[tag.upper() for tag in tags] + ["Ties"],
                             title="Nearest neighbors of {} reference vectors".format(report.reference_size),
                             ylabel="Reference vectors")

        attributes = {}
        for tag, bar in zip(tags, bars):
            gid = "nn_wins_{}".format(tag)
            bar.set_gid(gid)
            attributes[gid] = {"model": tag,
                               "value": report[tag].nn_wins,
                               "strict": report[tag].nn_strict_wins,
                               "tied": report[tag].nn_tied}

        bars[-1].set_gid("nn_ties")
        bars[-1].set_color(axis_grey)
        attributes["nn_ties"] = {"value": report.ties, "reference-size": report.reference_size}

        return self.save("nearest_neighbors", attributes)


    def min_distance_histograms(self, report=None):
        """Overlaid step histograms of the per-reference minimum distances."""
        report = self._get_report(report)
        edges = np.asarray(report.histogram_edges)
        centers = (edges[:-1] + edges[1:])/2

        ax = create_figure(nr_colors=max(len(report), 1))
        attributes = {}
        for i, (tag, metrics) in enumerate(report.items()):
            prettyPlot(centers, metrics.histogram, color=i, ax=ax, drawstyle="steps-mid",
                       label=tag.upper(), title="Distribution of minimum distances",
                       xlabel="Minimum distance to the samples", ylabel="Reference vectors")
            gid = "histogram_{}".format(tag)
            ax.lines[-1].set_gid(gid)
            attributes[gid] = {"model": tag,
                               "counts": metrics.histogram,
                               "mean": float(np.mean(metrics.min_distances))}

        ax.legend()
        attributes["histogram_axes"] = {"edges": edges}
        ax.set_gid("histogram_axes")

        return self.save("min_distance_histograms", attributes)


    def projection(self, coordinates, labels, name, title, xlabel="", ylabel=""):
        """Scatter plot of 2D coordinates colored by their source label."""
        coordinates = np.asarray(coordinates)
        labels = np.asarray(labels)
        names = list(dict.fromkeys(labels.tolist()))

        ax = create_figure(nr_colors=max(len(names), 1))
        attributes = {}
        for i, label in enumerate(names):
            mask = labels == label
            ax, collection = prettyScatter(coordinates[mask, 0], coordinates[mask, 1],
                                           color=i, label=label.upper(), ax=ax, alpha=0.6,
                                           title=title, xlabel=xlabel, ylabel=ylabel)
            gid = "{}_{}".format(name, label)
            collection.set_gid(gid)
            attributes[gid] = {"model": label, "count": int(mask.sum())}

        ax.legend()
        return self.save(name, attributes)


    def pca(self, report=None):
        report = self._get_report(report)
        ratio = np.asarray(report.explained_variance_ratio)
        coordinates = np.asarray(report.pca)
        if coordinates.shape[1] == 1:
            coordinates = np.column_stack([coordinates[:, 0], np.zeros(len(coordinates))])
            ratio = np.append(ratio, 0.)

        return self.projection(coordinates, report.labels, "pca", "PCA of the generated samples",
                               xlabel="PC1 ({:.1%})".format(ratio[0]),
                               ylabel="PC2 ({:.1%})".format(ratio[1]))


    def tsne(self, report=None):
        report = self._get_report(report)
        return self.projection(report.tsne, report.labels, "tsne", "t-SNE of the generated samples")


    def tsne_reference(self, report=None):
        report = self._get_report(report)
        labels = np.array(["reference"]*len(report.tsne_reference))
        return self.projection(report.tsne_reference, labels, "tsne_reference", "t-SNE of the encoded dataset")


    def correlations(self, report=None):
        """Heatmaps of the latent correlation matrices, one panel per set."""
        report = self._get_report(report)
        names = list(report.correlations.keys())

        set_style("white")
        fig, axes = plt.subplots(nrows=1, ncols=len(names), squeeze=False,
                                 figsize=(3.2*len(names), 3.2))

        attributes = {}
        for ax, name in zip(axes[0], names):
            matrix = report.correlations[name]
            sns.heatmap(matrix, vmin=-1, vmax=1, center=0, cmap="RdBu_r", square=True,
                        cbar=False, ax=ax, xticklabels=False, yticklabels=False)
            ax.set_title(name.upper() if name != "reference" else "Reference", fontsize=titlesize)

            gid = "correlation_{}".format(name)
            ax.collections[0].set_gid(gid)
            attributes[gid] = {"set": name, "dimension": len(matrix), "values": matrix}

        plt.tight_layout()
        return self.save("correlations", attributes, figure=fig)


    def tsne_kl(self, report=None, log_every=50):
        report = self._get_report(report)
        kl = np.asarray(report.tsne_kl)
        iterations = np.arange(1, len(kl) + 1)*log_every

        ax = prettyPlot(iterations, kl, title="t-SNE objective", xlabel="Iteration", ylabel="KL divergence", color=0)
        ax.lines[-1].set_gid("tsne_kl")
        return self.save("tsne_kl", {"tsne_kl": {"values": kl}})


    def plot_report(self, report=None):
        """
        Every figure of a metrics report.

        Returns
        -------
        filenames : list of str
        """
        report = self._get_report(report)
        logger = get_logger(self)

        filenames = [self.avg_min_distance(report),
                     self.nearest_neighbors(report),
                     self.min_distance_histograms(report),
                     self.pca(report),
                     self.correlations(report)]

        if report.tsne is not None:
            filenames.append(self.tsne(report))
            filenames.append(self.tsne_kl(report))
        if report.tsne_reference is not None:
            filenames.append(self.tsne_reference(report))

        logger.info("Plotted {} report figures to {}".format(len(filenames), self.folder))
        return filenames


    def loss_curves(self, history, name, title="", xlabel="Step", logy=False):
        """
        One line per curve of a training history.

        Parameters
        ----------
        history : mapping
            Curve name to a sequence of values.
        name : str
            File name without extension.
        """
        curves = [(label, np.asarray(values, dtype=np.float64)) for label, values in history.items() if len(values)]
        if not curves:
            get_logger(self).warning("No training history for {}, nothing to plot".format(name))
            return None

        ax = create_figure(nr_colors=max(len(curves), 1))
        attributes = {}
        for i, (label, values) in enumerate(curves):
            prettyPlot(np.arange(1, len(values) + 1), values, color=i, ax=ax, label=label,
                       title=title, xlabel=xlabel, ylabel="Loss")
            gid = "{}_{}".format(name, label)
            ax.lines[-1].set_gid(gid)
            attributes[gid] = {"curve": label, "final": values[-1], "length": len(values)}

        if logy and all(np.all(values > 0) for _, values in curves):
            ax.set_yscale("log")
        if len(curves) > 1:
            ax.legend()

        return self.save(name, attributes)


    def _grid(self, count, style="darkgrid"):
        grid_x_size = int(np.ceil(np.sqrt(count)))
        grid_y_size = int(np.ceil(count/float(grid_x_size)))

        set_style(style)
        fig, axes = plt.subplots(nrows=grid_y_size, ncols=grid_x_size, squeeze=False)
        axes = axes.ravel()
        for ax in axes[count:]:
            ax.set_axis_off()
        return fig, axes[:count]


    def qcbm_distributions(self, learned, targets, name="qcbm_distributions"):
        """Learned Born distributions against the binned targets, one panel per dimension."""
        learned = np.asarray(learned)
        targets = np.asarray(targets)
        bins = np.arange(learned.shape[1])

        fig, axes = self._grid(len(learned))
        attributes = {}
        for d, ax in enumerate(axes):
            ax.bar(bins, targets[d], width=1., color=axis_grey, linewidth=0, label="Target")
            prettyPlot(bins, learned[d], color=0, ax=ax, label="Learned", title="z{}".format(d))
            ax.tick_params(labelsize=fontsize)

            gid = "qcbm_learned_z{}".format(d)
            ax.lines[-1].set_gid(gid)
            attributes[gid] = {"dimension": d,
                               "total-variation": 0.5*float(np.abs(learned[d] - targets[d]).sum())}

        axes[0].legend(fontsize=fontsize)
        plt.suptitle("QCBM learned and target distributions", fontsize=titlesize)
        plt.tight_layout()
        return self.save(name, attributes, figure=fig)


    def latent_histograms(self, latents, bins=50, name="latent_histograms"):
        """Histogram of every latent dimension of the encoded dataset."""
        latents = np.asarray(latents)

        fig, axes = self._grid(latents.shape[1])
        attributes = {}
        for d, ax in enumerate(axes):
            spines_color(ax)
            ax.hist(latents[:, d], bins=bins, color=sns.color_palette()[d % len(sns.color_palette())], linewidth=0)
            ax.set_gid("latent_histogram_z{}".format(d))
            ax.set_title("z{}".format(d), fontsize=labelsize)
            ax.tick_params(labelsize=fontsize)
            attributes["latent_histogram_z{}".format(d)] = {"mean": float(latents[:, d].mean()),
                                                            "std": float(latents[:, d].std())}

        plt.suptitle("Distribution of latent values", fontsize=titlesize)
        plt.tight_layout()
        return self.save(name, attributes, figure=fig)


    def field(self, values, name, title="", symmetric=False, colorbar_label=""):
        """Map of one lattice field, indexed ``[x, y]``."""
        values = np.asarray(values)
        ax, image = prettyImage(values, title=title, symmetric=symmetric, colorbar_label=colorbar_label)
        image.set_gid(name)

        finite = values[np.isfinite(values)]
        attributes = {name: {"nx": values.shape[0], "ny": values.shape[1],
                             "min": float(finite.min()) if finite.size else 0.,
                             "max": float(finite.max()) if finite.size else 0.}}
        return self.save(name, attributes)


    def plot_fields(self, fields, vorticity, solid=None):
        """
        Velocity magnitude, vorticity and density maps of a lattice state.

        Parameters
        ----------
        fields : MacroscopicFields
        vorticity : array
            Shape (nx, ny).
        solid : {array, None}, optional
            Obstacle nodes, left blank in the maps.

        Returns
        -------
        filenames : list of str
        """
        def masked(values):
            values = np.array(values, dtype=np.float64)
            if solid is not None:
                values[np.asarray(solid)] = np.nan
            return values

        speed = np.sqrt(np.asarray(fields.ux)**2 + np.asarray(fields.uy)**2)

        return [self.field(masked(speed), "velocity", title="Velocity magnitude", colorbar_label="|u|"),
                self.field(masked(vorticity), "vorticity", title="Vorticity", symmetric=True,
                           colorbar_label="ω"),
                self.field(masked(fields.rho), "density", title="Density", colorbar_label="ρ")]
