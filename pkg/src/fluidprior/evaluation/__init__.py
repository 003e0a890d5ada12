"""
Comparison of generated latent samples against the encoded dataset.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

__all__ = ["CANONICAL_ORDER", "HISTOGRAM_BINS", "canonical_tags",
           "min_distances", "avg_min_distance", "NearestNeighborCounts", "nearest_neighbor_counts",
           "distance_histogram", "min_distance_distribution", "min_distance_distributions",
           "latent_correlation",
           "PcaResult", "TsneResult", "pca_fit_project", "calibrate_affinities", "tsne_embed",
           "ModelMetrics", "MetricsReport", "build_report", "emit_report",
           "write_metrics_csv", "read_metrics_csv"]

from .metrics import (CANONICAL_ORDER, HISTOGRAM_BINS, canonical_tags, min_distances, avg_min_distance,
                      NearestNeighborCounts, nearest_neighbor_counts, distance_histogram,
                      min_distance_distribution, min_distance_distributions, latent_correlation)
from .projection import PcaResult, TsneResult, pca_fit_project, calibrate_affinities, tsne_embed
from .report import (ModelMetrics, MetricsReport, build_report, emit_report,
                     write_metrics_csv, read_metrics_csv)
