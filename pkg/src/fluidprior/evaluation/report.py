from __future__ import absolute_import, division, print_function, unicode_literals

import os
from collections import OrderedDict

try:
    from collections.abc import MutableMapping
except ImportError:
    from collections import MutableMapping

import numpy as np

from .metrics import (avg_min_distance, nearest_neighbor_counts, min_distance_distributions,
                      latent_correlation, canonical_tags, HISTOGRAM_BINS)
from .projection import pca_fit_project, tsne_embed
from .._version import __version__
from ..utils.logger import setup_module_logger, get_logger
from ..utils.utility import make_folder, write_csv, read_csv


class ModelMetrics(MutableMapping):
    """
    Comparison statistics of one generative model.

    The metrics can be retrieved as attributes or by indexing with their
    name; metrics that are None are skipped when iterating.

    Attributes
    ----------
    name : str
        Model tag.
    sample_count : int
    avg_min_distance : float
        Mean distance from a sample to its nearest reference vector.
    nn_wins : int
        Reference vectors whose globally nearest sample belongs to the
        model, ties included.
    nn_strict_wins : int
    nn_tied : int
    min_distances : array
        Per reference vector, the distance to the nearest sample of the
        model.
    histogram : array
        Counts of `min_distances` over the report's pooled bins.
    """
    scalars = ["sample_count", "avg_min_distance", "nn_wins", "nn_strict_wins", "nn_tied"]
    arrays = ["min_distances", "histogram"]

    def __init__(self, name, **metrics):
        self.name = name
        for metric in self.scalars + self.arrays:
            setattr(self, metric, metrics.pop(metric, None))

        if metrics:
            raise ValueError("unknown metrics for {}: {}".format(name, ", ".join(sorted(metrics))))


    def __getitem__(self, metric):
        if metric not in self.scalars + self.arrays:
            raise KeyError(metric)
        return getattr(self, metric)


    def __setitem__(self, metric, value):
        if metric not in self.scalars + self.arrays:
            raise KeyError("{} is not a model metric".format(metric))
        setattr(self, metric, value)


    def __delitem__(self, metric):
        self[metric] = None


    def __iter__(self):
        for metric in self.scalars + self.arrays:
            if getattr(self, metric) is not None:
                yield metric


    def __len__(self):
        return len(list(iter(self)))


    def summary(self):
        """The scalar metrics as an OrderedDict."""
        return OrderedDict((metric, getattr(self, metric)) for metric in self.scalars)



class MetricsReport(MutableMapping):
    """
    All comparison statistics of a run, indexed by model tag.

    Parameters
    ----------
    filename : {None, str}, optional
        Load the report from this HDF5 or Exdir file.
    backend : {"auto", "hdf5", "exdir"}, optional
        File backend. "auto" picks by extension (".h5" or ".exdir").
    logger_level : {"info", "debug", "warning", "error", "critical", None}, optional

    Attributes
    ----------
    reference_size : int
    ties : int
        Reference vectors with a nearest-neighbor tie between models.
    histogram_edges : array
        Pooled bin edges of the minimum-distance histograms.
    labels : array of str
        Source of every row of the projections.
    pca : array
        PCA coordinates of the combined samples.
    explained_variance_ratio : array
    tsne : {array, None}
        t-SNE coordinates of the combined samples.
    tsne_kl : {array, None}
        KL divergence every 50 iterations.
    tsne_reference : {array, None}
        Optional t-SNE of the reference latents alone.
    correlations : OrderedDict
        Latent correlation matrix of the reference set and of each model.
    seed : {int, None}
    version : str
    """
    def __init__(self, filename=None, backend="auto", logger_level="info"):
        if backend not in ["auto", "hdf5", "exdir"]:
            raise ValueError("backend {} not supported. Supported backends are: auto, hdf5, and exdir".format(backend))

        self.backend = backend
        setup_module_logger(self, level=logger_level)
        self.clear()

        if filename is not None:
            self.load(filename)


    def clear(self):
        self.data = OrderedDict()
        self.reference_size = 0
        self.ties = 0
        self.histogram_edges = None
        self.labels = None
        self.pca = None
        self.explained_variance_ratio = None
        self.tsne = None
        self.tsne_kl = None
        self.tsne_reference = None
        self.correlations = OrderedDict()
        self.seed = None
        self.version = __version__


    def __getitem__(self, tag):
        return self.data[tag]


    def __setitem__(self, tag, metrics):
        self.data[tag] = metrics


    def __delitem__(self, tag):
        del self.data[tag]


    def __iter__(self):
        return iter(self.data)


    def __len__(self):
        return len(self.data)


    def __str__(self):
        lines = ["{:<8}{:>20}{:>10}{:>10}".format("model", "avg min distance", "NN wins", "ties")]
        for tag, metrics in self.data.items():
            lines.append("{:<8}{:>20.6f}{:>10d}{:>10d}".format(tag, metrics.avg_min_distance,
                                                              metrics.nn_wins, metrics.nn_tied))
        lines.append("{} reference vectors, {} ties".format(self.reference_size, self.ties))
        return "\n".join(lines)


    def summary(self):
        """One OrderedDict of scalar metrics per model, as written to ``metrics.csv``."""
        summary = OrderedDict()
        for tag, metrics in self.data.items():
            row = metrics.summary()
            row["nn_ties_total"] = self.ties
            row["reference_size"] = self.reference_size
            summary[tag] = row
        return summary


    def _backend(self, filename):
        if self.backend == "auto":
            if filename.endswith(".h5"):
                current_backend = "hdf5"
            elif filename.endswith(".exdir"):
                current_backend = "exdir"
            else:
                get_logger(self).warning("Unknown file extension, defaulting to HDF5 for {}".format(filename))
                current_backend = "hdf5"
        else:
            current_backend = self.backend

        if current_backend == "hdf5":
            try:
                import h5py as backend
            except ImportError:
                raise ImportError("The HDF5 backend requires: h5py")
        else:
            try:
                import exdir.core as backend
            except ImportError:
                raise ImportError("The Exdir backend requires: exdir")

        return backend


    def save(self, filename):
        """
        Save the report to an HDF5 or Exdir file.

        Raises
        ------
        ImportError
            If the backend package is not installed.
        """
        backend = self._backend(filename)

        f = backend.File(filename, "w")
        try:
            f.attrs["version"] = self.version
            f.attrs["reference size"] = self.reference_size
            f.attrs["ties"] = self.ties
            f.attrs["models"] = [tag.encode("utf8") for tag in self.data]
            if self.seed is not None:
                f.attrs["seed"] = self.seed

            for tag, metrics in self.data.items():
                group = f.create_group(tag)
                for metric in metrics:
                    group.create_dataset(metric, data=metrics[metric])

            projection = f.create_group("projection")
            for name in ["histogram_edges", "pca", "explained_variance_ratio", "tsne", "tsne_kl", "tsne_reference"]:
                value = getattr(self, name)
                if value is not None:
                    projection.create_dataset(name, data=np.asarray(value))
            if self.labels is not None:
                projection.create_dataset("labels", data=np.array([label.encode("utf8") for label in self.labels]))

            correlations = f.create_group("correlations")
            correlations.attrs["order"] = [name.encode("utf8") for name in self.correlations]
            for name, matrix in self.correlations.items():
                correlations.create_dataset(name, data=matrix)
        finally:
            f.close()


    def load(self, filename):
        """Load a report written by :py:meth:`save`."""
        backend = self._backend(filename)

        self.clear()

        def decode(values):
            return [value.decode("utf8") if isinstance(value, bytes) else str(value) for value in values]

        f = backend.File(filename, "r")
        try:
            self.version = str(f.attrs["version"])
            self.reference_size = int(f.attrs["reference size"])
            self.ties = int(f.attrs["ties"])
            if "seed" in f.attrs:
                self.seed = int(f.attrs["seed"])

            for tag in decode(f.attrs["models"]):
                metrics = ModelMetrics(tag)
                for metric in f[tag]:
                    value = f[tag][metric][()]
                    metrics[metric] = value if metric in ModelMetrics.arrays else value.item()
                self.data[tag] = metrics

            projection = f["projection"]
            for name in projection:
                if name == "labels":
                    self.labels = np.array(decode(projection[name][()]))
                else:
                    setattr(self, name, projection[name][()])

            correlations = f["correlations"]
            for name in decode(correlations.attrs["order"]):
                self.correlations[name] = correlations[name][()]
        finally:
            f.close()



def build_report(sample_sets,
                 reference,
                 perplexity=100,
                 tsne_iters=1000,
                 bins=HISTOGRAM_BINS,
                 seed=None,
                 tsne=True,
                 tsne_reference=False,
                 CPUs=None,
                 logger_level="info"):
    """
    Compute every comparison statistic of the generated samples.

    Parameters
    ----------
    sample_sets : mapping
        Model tag to an (N, D) sample matrix.
    reference : array
        Encoded dataset latents, shape (M, D).
    perplexity : float, optional
        t-SNE perplexity. Default is 100.
    tsne_iters : int, optional
        Default is 1000.
    bins : int, optional
        Bins of the minimum-distance histograms. Default is 64.
    seed : {int, None}, optional
        Seed of the t-SNE initialization.
    tsne : bool, optional
        Compute the t-SNE of the combined samples. Default is True.
    tsne_reference : bool, optional
        Also embed the reference latents alone. Default is False.
    CPUs : {int, None, "max"}, optional

    Returns
    -------
    report : MetricsReport
    """
    report = MetricsReport(logger_level=logger_level)
    logger = get_logger(report)

    tags = canonical_tags(sample_sets.keys())
    reference = np.asarray(reference, dtype=np.float64)

    report.reference_size = len(reference)
    report.seed = seed

    logger.info("Comparing {} against {} reference vectors".format(", ".join(tags), len(reference)))

    counts = nearest_neighbor_counts(sample_sets, reference, CPUs=CPUs)
    distances, histograms, edges = min_distance_distributions(sample_sets, reference, bins=bins, CPUs=CPUs)

    report.ties = counts.ties
    report.histogram_edges = edges
    for tag in tags:
        report[tag] = ModelMetrics(tag,
                                   sample_count=len(sample_sets[tag]),
                                   avg_min_distance=avg_min_distance(sample_sets[tag], reference, CPUs=CPUs),
                                   nn_wins=counts.wins[tag],
                                   nn_strict_wins=counts.strict_wins[tag],
                                   nn_tied=counts.tied[tag],
                                   min_distances=distances[tag],
                                   histogram=histograms[tag])

    combined = np.concatenate([sample_sets[tag] for tag in tags], axis=0)
    report.labels = np.array([tag for tag in tags for _ in range(len(sample_sets[tag]))])

    pca = pca_fit_project(combined, k=2)
    report.pca = pca.coordinates
    report.explained_variance_ratio = pca.explained_variance_ratio

    if tsne:
        result = tsne_embed(combined, perplexity=perplexity, iters=tsne_iters, seed=seed, logger_level=logger_level)
        report.tsne = result.embedding
        report.tsne_kl = np.array(result.kl)

    if tsne_reference:
        report.tsne_reference = tsne_embed(reference, perplexity=perplexity, iters=tsne_iters,
                                           seed=seed, logger_level=logger_level).embedding

    report.correlations["reference"] = latent_correlation(reference)
    for tag in tags:
        report.correlations[tag] = latent_correlation(sample_sets[tag])

    return report


METRICS_HEADER = ["model", "sample_count", "avg_min_distance", "nn_wins", "nn_strict_wins", "nn_tied",
                  "nn_ties_total", "reference_size"]


def write_metrics_csv(filename, report):
    rows = ([tag] + list(row.values()) for tag, row in report.summary().items())
    write_csv(filename, METRICS_HEADER, rows)


def read_metrics_csv(filename):
    """
    Parse ``metrics.csv``.

    Returns
    -------
    summary : OrderedDict
        Same layout as :py:meth:`MetricsReport.summary`.
    """
    header, rows = read_csv(filename)
    if header != METRICS_HEADER:
        raise ValueError("{} is not a metrics file, header is {}".format(filename, header))

    summary = OrderedDict()
    for row in rows:
        summary[row[0]] = OrderedDict((name, float(value) if name == "avg_min_distance" else int(value))
                                      for name, value in zip(header[1:], row[1:]))
    return summary


def emit_report(report, folder, plot=True, logger_level="info"):
    """
    Write the report as CSV files, an HDF5 file and SVG figures.

    Files written to `folder`:

    * ``metrics.csv``: one row of scalar metrics per model;
    * ``distances_<tag>.csv``: per reference vector minimum distance;
    * ``distance_histogram.csv``: pooled bins with one count column per model;
    * ``pca.csv`` and ``tsne.csv``: 2D coordinates with the source label;
    * ``correlations.csv``: the latent correlation matrices;
    * ``metrics.h5``;
    * SVG figures, if `plot`.

    Returns
    -------
    filenames : list of str

    Raises
    ------
    OSError
        If `folder` cannot be created or written.
    """
    make_folder(folder)
    filenames = []

    def path(name):
        filenames.append(os.path.join(folder, name))
        return filenames[-1]

    write_metrics_csv(path("metrics.csv"), report)

    for tag, metrics in report.items():
        write_csv(path("distances_{}.csv".format(tag)), ["reference", "min_distance"],
                  ([index, float(distance)] for index, distance in enumerate(metrics.min_distances)))

    edges = report.histogram_edges
    write_csv(path("distance_histogram.csv"), ["bin_low", "bin_high"] + list(report.keys()),
              ([float(edges[i]), float(edges[i + 1])] + [int(report[tag].histogram[i]) for tag in report]
               for i in range(len(edges) - 1)))

    write_csv(path("pca.csv"), ["model", "pc1", "pc2"],
              ([label] + [float(value) for value in row] for label, row in zip(report.labels, report.pca)))

    if report.tsne is not None:
        write_csv(path("tsne.csv"), ["model", "x", "y"],
                  ([label] + [float(value) for value in row] for label, row in zip(report.labels, report.tsne)))

    if report.tsne_reference is not None:
        write_csv(path("tsne_reference.csv"), ["x", "y"],
                  ([float(value) for value in row] for row in report.tsne_reference))

    dimension = len(next(iter(report.correlations.values()))) if report.correlations else 0
    write_csv(path("correlations.csv"), ["set", "dimension"] + ["z{}".format(i) for i in range(dimension)],
              ([name, i] + [float(value) for value in matrix[i]]
               for name, matrix in report.correlations.items() for i in range(len(matrix))))

    report.save(path("metrics.h5"))

    if plot:
        from ..plotting import PlotReport

        plotter = PlotReport(folder=folder, logger_level=logger_level)
        filenames.extend(plotter.plot_report(report))

    return filenames
