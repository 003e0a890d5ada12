from __future__ import absolute_import, division, print_function, unicode_literals

from collections import namedtuple, OrderedDict

import numpy as np
from scipy.spatial.distance import cdist

from ..utils.utility import parallel_map


CANONICAL_ORDER = ("qcbm", "qgan", "lstm")

HISTOGRAM_BINS = 64


def _check_matrix(matrix, what):
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or len(matrix) == 0:
        raise ValueError("{} must be a nonempty N × D matrix, got shape {}".format(what, matrix.shape))
    if not np.all(np.isfinite(matrix)):
        raise ValueError("{} must be finite".format(what))
    return matrix


def canonical_tags(tags):
    """`tags` ordered as qcbm, qgan, lstm, followed by any other tags in their given order."""
    tags = list(tags)
    return [tag for tag in CANONICAL_ORDER if tag in tags] + [tag for tag in tags if tag not in CANONICAL_ORDER]


def min_distances(points, targets, CPUs=None, chunk_size=512):
    """
    Euclidean distance from every row of `points` to its nearest row of
    `targets`.

    Rows of `points` are processed in chunks, possibly in parallel, and
    concatenated in order.
    """
    points = _check_matrix(points, "points")
    targets = _check_matrix(targets, "targets")

    def chunk_minimum(start):
        return cdist(points[start:start + chunk_size], targets).min(axis=1)

    chunks = parallel_map(chunk_minimum, range(0, len(points), chunk_size), CPUs=CPUs, disable=True)
    return np.concatenate(chunks)


def avg_min_distance(samples, reference, CPUs=None):
    """
    Mean over the samples of the distance to the nearest reference vector.

    Raises
    ------
    ValueError
        If either set is empty.
    """
    return float(np.mean(min_distances(samples, reference, CPUs=CPUs)))


class NearestNeighborCounts(namedtuple("NearestNeighborCounts", ["wins", "ties", "tied"])):
    """
    Attribution of every reference vector to the model owning the globally
    nearest generated sample.

    Attributes
    ----------
    wins : OrderedDict
        Reference vectors won per model, in canonical order. Exact ties go to
        the first model in that order, so the wins sum to the reference size.
    ties : int
        Number of reference vectors with a tie between models.
    tied : OrderedDict
        Per model, how many of its wins were ties.
    """
    __slots__ = ()

    @property
    def total(self):
        return sum(self.wins.values())


    @property
    def strict_wins(self):
        return OrderedDict((tag, self.wins[tag] - self.tied[tag]) for tag in self.wins)



def nearest_neighbor_counts(sample_sets, reference, CPUs=None):
    """
    Count for every model how many reference vectors have their globally
    nearest generated sample in that model's samples.

    Parameters
    ----------
    sample_sets : mapping
        Model tag to an (N, D) sample matrix.
    reference : array
        Reference latents, shape (M, D).

    Returns
    -------
    counts : NearestNeighborCounts
    """
    if not sample_sets:
        raise ValueError("nearest neighbor counts need at least one sample set")

    tags = canonical_tags(sample_sets.keys())
    reference = _check_matrix(reference, "reference")

    # (M, models); argmin picks the first model on exact ties
    distances = np.column_stack([min_distances(reference, sample_sets[tag], CPUs=CPUs) for tag in tags])
    winners = np.argmin(distances, axis=1)
    best = distances[np.arange(len(reference)), winners]
    is_tie = (distances == best[:, None]).sum(axis=1) > 1

    wins = OrderedDict((tag, int(np.sum(winners == index))) for index, tag in enumerate(tags))
    tied = OrderedDict((tag, int(np.sum((winners == index) & is_tie))) for index, tag in enumerate(tags))

    return NearestNeighborCounts(wins=wins, ties=int(is_tie.sum()), tied=tied)


def distance_histogram(distances, bins=HISTOGRAM_BINS, value_range=None):
    """
    Equal-width histogram of `distances`.

    Returns
    -------
    counts : array of int
    edges : array
        ``bins + 1`` edges spanning `value_range` (default the data range).
    """
    distances = np.asarray(distances, dtype=np.float64)
    low, high = value_range if value_range is not None else (distances.min(), distances.max())
    if not high > low:
        high = low + 1.

    edges = np.linspace(low, high, bins + 1)
    counts, _ = np.histogram(distances, bins=edges)
    return counts, edges


def min_distance_distribution(samples, reference, bins=HISTOGRAM_BINS, value_range=None, CPUs=None):
    """
    Distance from every reference vector to the nearest of the model's
    samples, with its histogram.

    Returns
    -------
    distances : array
        Shape (M,).
    counts : array
    edges : array
    """
    distances = min_distances(reference, samples, CPUs=CPUs)
    counts, edges = distance_histogram(distances, bins, value_range)
    return distances, counts, edges


def min_distance_distributions(sample_sets, reference, bins=HISTOGRAM_BINS, CPUs=None):
    """
    :py:func:`min_distance_distribution` for every model, with histograms
    over the pooled range so they are comparable.

    Returns
    -------
    distances : OrderedDict
        Tag to (M,) distances.
    counts : OrderedDict
        Tag to histogram counts.
    edges : array
    """
    tags = canonical_tags(sample_sets.keys())
    distances = OrderedDict((tag, min_distances(reference, sample_sets[tag], CPUs=CPUs)) for tag in tags)

    pooled = np.concatenate(list(distances.values()))
    value_range = (pooled.min(), pooled.max())

    counts = OrderedDict()
    edges = None
    for tag in tags:
        counts[tag], edges = distance_histogram(distances[tag], bins, value_range)

    return distances, counts, edges


def latent_correlation(matrix):
    """
    Pearson correlation matrix of the columns of `matrix`.

    A constant column has no defined correlation; it gets 0 off the diagonal
    and 1 on it.
    """
    matrix = _check_matrix(matrix, "latent matrix")
    centered = matrix - matrix.mean(axis=0)
    scale = np.sqrt((centered**2).sum(axis=0))

    covariance = centered.T @ centered
    outer = np.outer(scale, scale)
    correlation = np.divide(covariance, outer, out=np.zeros_like(covariance), where=outer > 0)
    correlation = np.clip(correlation, -1, 1)
    np.fill_diagonal(correlation, 1.)
    return correlation
