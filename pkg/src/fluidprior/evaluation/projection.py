"""
Two-dimensional projections of latent vectors: PCA and exact t-SNE.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

from collections import namedtuple

import numpy as np
from scipy.spatial.distance import pdist, squareform
from tqdm import tqdm

from ..utils.logger import get_logger, is_quiet, setup_module_logger
from ..utils.utility import make_rng


PcaResult = namedtuple("PcaResult", ["coordinates", "components", "explained_variance",
                                     "explained_variance_ratio", "mean"])

TsneResult = namedtuple("TsneResult", ["embedding", "kl", "iterations"])

LOGGER_NAME = "fluidprior.evaluation.projection"


def pca_fit_project(matrix, k=2, rank_tolerance=1e-12):
    """
    Principal component analysis through the eigendecomposition of the
    sample covariance.

    Parameters
    ----------
    matrix : array
        Data, shape (N, D), N >= k + 1.
    k : int, optional
        Number of components. Default is 2.
    rank_tolerance : float, optional
        Eigenvalues below ``rank_tolerance`` times the largest are treated as
        zero. If fewer than `k` remain, `k` is reduced with a warning.

    Returns
    -------
    result : PcaResult
        ``coordinates`` (N, k) are the centered data times the ``components``
        (k, D). Each component's largest-magnitude entry is positive.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or len(matrix) < k + 1:
        raise ValueError("PCA with {} components needs at least {} rows, got shape {}".format(k, k + 1, matrix.shape))

    mean = matrix.mean(axis=0)
    centered = matrix - mean
    covariance = centered.T @ centered/(len(matrix) - 1)

    eigenvalues, eigenvectors = np.linalg.eigh(covariance)
    order = np.argsort(eigenvalues)[::-1]
    eigenvalues = np.clip(eigenvalues[order], 0, None)
    eigenvectors = eigenvectors[:, order]

    rank = int(np.sum(eigenvalues > rank_tolerance*max(eigenvalues[0], 1e-300)))
    if rank < k:
        get_logger(LOGGER_NAME).warning("Degenerate covariance, reducing PCA from {} to {} components".format(k, rank))
        k = max(rank, 1)

    components = eigenvectors[:, :k].T
    largest = np.argmax(np.abs(components), axis=1)
    signs = np.sign(components[np.arange(k), largest])
    components = components*signs[:, None]

    total = eigenvalues.sum()
    ratio = eigenvalues[:k]/total if total > 0 else np.zeros(k)

    return PcaResult(coordinates=centered @ components.T,
                     components=components,
                     explained_variance=eigenvalues[:k],
                     explained_variance_ratio=ratio,
                     mean=mean)


def _row_entropy(distances, beta):
    """Conditional probabilities of one row and their entropy (nats)."""
    shifted = distances - distances.min()
    weights = np.exp(-shifted*beta)
    total = weights.sum()
    p = weights/total
    entropy = np.log(total) + beta*np.sum(shifted*p)
    return p, entropy


def calibrate_affinities(squared_distances, perplexity=100, tol=1e-5, max_steps=200):
    """
    Conditional affinities ``p_{j|i}`` with a per-point precision chosen by
    bisection so that each row's entropy equals ``log(perplexity)``.

    Parameters
    ----------
    squared_distances : array
        Pairwise squared Euclidean distances, shape (N, N).
    perplexity : float, optional
        Default is 100.
    tol : float, optional
        Entropy tolerance of the bisection. Default is 1e-5.
    max_steps : int, optional
        Bisection step cap per point. Default is 200.

    Returns
    -------
    conditional : array
        Row-stochastic (N, N) matrix with a zero diagonal.
    betas : array
        Precisions ``1/(2 sigma_i^2)``.
    entropies : array
        Achieved entropies.
    """
    squared_distances = np.asarray(squared_distances, dtype=np.float64)
    count = len(squared_distances)
    target = np.log(perplexity)

    conditional = np.zeros((count, count))
    betas = np.ones(count)
    entropies = np.zeros(count)

    for i in range(count):
        others = np.concatenate([squared_distances[i, :i], squared_distances[i, i + 1:]])

        beta, low, high = 1., None, None
        p, entropy = _row_entropy(others, beta)
        for _ in range(max_steps):
            difference = entropy - target
            if abs(difference) < tol:
                break

            # too flat: increase the precision
            if difference > 0:
                low = beta
                beta = beta*2 if high is None else (beta + high)/2
            else:
                high = beta
                beta = beta/2 if low is None else (beta + low)/2

            p, entropy = _row_entropy(others, beta)

        conditional[i, :i] = p[:i]
        conditional[i, i + 1:] = p[i:]
        betas[i] = beta
        entropies[i] = entropy

    return conditional, betas, entropies


def _kl(P, Q):
    mask = P > 0
    return float(np.sum(P[mask]*np.log(P[mask]/Q[mask])))


def tsne_embed(matrix,
               perplexity=100,
               iters=1000,
               learning_rate=200.,
               exaggeration=12.,
               exaggeration_iters=250,
               seed=None,
               log_every=50,
               logger_level=None):
    """
    Exact t-SNE embedding in two dimensions.

    Symmetrized affinities ``P = (P_cond + P_cond^T)/(2N)`` are matched by a
    Student-t similarity in the embedding. Gradient descent uses momentum
    0.5 (0.8 after the exaggeration phase), per-coordinate gains (minimum
    0.01) and early exaggeration of P.

    Parameters
    ----------
    matrix : array
        Data, shape (N, D) with N > 3*perplexity.
    perplexity : float, optional
        Default is 100.
    iters : int, optional
        Default is 1000.
    learning_rate : float, optional
        Default is 200.
    exaggeration : float, optional
        Default is 12.
    exaggeration_iters : int, optional
        Default is 250.
    seed : {int, None}, optional
        Seed of the initial embedding, drawn from ``N(0, 1e-4 I)``.
    log_every : int, optional
        Iterations between recorded KL divergences. Default is 50.
    logger_level : {"info", "debug", "warning", "error", "critical", None}, optional

    Returns
    -------
    result : TsneResult
        ``embedding`` (N, 2), the KL divergences (against the
        unexaggerated P) and the iterations they were recorded at.

    Raises
    ------
    ValueError
        If there are too few points for the perplexity.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    count = len(matrix)
    if count <= 3*perplexity:
        raise ValueError("t-SNE with perplexity {} needs more than {} points, got {}; "
                         "use a perplexity below {:.4g}".format(perplexity, 3*perplexity, count, count/3.))

    setup_module_logger(LOGGER_NAME, level=logger_level)
    logger = get_logger(LOGGER_NAME)

    conditional, _, _ = calibrate_affinities(squareform(pdist(matrix, "sqeuclidean")), perplexity)
    P = (conditional + conditional.T)/(2*count)
    P = np.maximum(P, 1e-300)
    np.fill_diagonal(P, 0)

    rng = make_rng(seed)
    Y = rng.normal(0, 1e-2, size=(count, 2))
    velocity = np.zeros_like(Y)
    gains = np.ones_like(Y)

    kl = []
    recorded = []

    for iteration in tqdm(range(iters), desc="t-SNE", disable=is_quiet(logger)):
        exaggerating = iteration < exaggeration_iters
        momentum = 0.5 if exaggerating else 0.8
        P_effective = P*exaggeration if exaggerating else P

        numerator = 1/(1 + squareform(pdist(Y, "sqeuclidean")))
        np.fill_diagonal(numerator, 0)
        Q = np.maximum(numerator/numerator.sum(), 1e-300)

        weights = (P_effective - Q)*numerator
        gradient = 4*(np.diag(weights.sum(axis=1)) - weights) @ Y

        increase = np.sign(gradient) != np.sign(velocity)
        gains = np.where(increase, gains + 0.2, gains*0.8)
        gains = np.maximum(gains, 0.01)

        velocity = momentum*velocity - learning_rate*gains*gradient
        Y = Y + velocity
        Y = Y - Y.mean(axis=0)

        if (iteration + 1) % log_every == 0 or iteration == iters - 1:
            numerator = 1/(1 + squareform(pdist(Y, "sqeuclidean")))
            np.fill_diagonal(numerator, 0)
            divergence = _kl(P, np.maximum(numerator/numerator.sum(), 1e-300))
            kl.append(divergence)
            recorded.append(iteration + 1)
            logger.debug("t-SNE iteration {}: KL {:.6g}".format(iteration + 1, divergence))

    return TsneResult(embedding=Y, kl=kl, iterations=recorded)
