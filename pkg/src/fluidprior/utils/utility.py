from __future__ import absolute_import, division, print_function, unicode_literals

"""
Small helpers shared by the simulation, the models and the pipeline.
"""

import csv
import math
import os

import multiprocess
import numpy as np
from tqdm import tqdm

from ..exceptions import NumericalError


def resolve_CPUs(CPUs):
    """
    Translate the `CPUs` argument used throughout fluidprior into a worker
    count.

    Parameters
    ----------
    CPUs : {int, None, "max"}
        Number of worker processes. "max" uses every core, None or 1 runs
        serially.

    Returns
    -------
    CPUs : {int, None}
        Worker count, or None for serial execution.
    """
    if CPUs == "max":
        return multiprocess.cpu_count()
    if CPUs is None:
        return None

    CPUs = int(CPUs)
    if CPUs < 1:
        raise ValueError("CPUs must be a positive integer, None or 'max', not {}".format(CPUs))
    if CPUs == 1:
        return None
    return CPUs


def parallel_map(function, arguments, CPUs=None, desc=None, disable=False):
    """
    Apply `function` to every item of `arguments`, in a
    ``multiprocess.Pool`` if more than one CPU is requested.

    Results are returned in the order of `arguments`, independent of the
    number of workers.

    Parameters
    ----------
    function : callable
        Function of a single argument. Closures are fine, multiprocess
        pickles with dill.
    arguments : list
        Items to map over.
    CPUs : {int, None, "max"}, optional
        Number of worker processes. Default is None (serial).
    desc : {str, None}, optional
        Progress bar description.
    disable : bool, optional
        Disable the progress bar. Default is False.

    Returns
    -------
    results : list
        ``[function(argument) for argument in arguments]``.
    """
    arguments = list(arguments)
    CPUs = resolve_CPUs(CPUs)

    results = []
    if CPUs:
        pool = multiprocess.Pool(processes=min(CPUs, max(len(arguments), 1)))
        try:
            for result in tqdm(pool.imap(function, arguments, 1),
                               desc=desc,
                               total=len(arguments),
                               disable=disable):
                results.append(result)
        finally:
            pool.close()
            pool.join()
    else:
        for argument in tqdm(arguments, desc=desc, disable=disable):
            results.append(function(argument))

    return results


def derive_seed(master_seed, stage_index, counter=0):
    """
    Counter-based seed derivation.

    The seed of a stage depends only on the master seed, the position of the
    stage in the pipeline and a counter, so a stage can be re-run on its own
    and see the same random numbers as in a full run.

    Parameters
    ----------
    master_seed : int
        The master seed of the run.
    stage_index : int
        Position of the stage in the pipeline stage list.
    counter : int, optional
        Sub-stream index within the stage, e.g. the latent dimension.

    Returns
    -------
    seed : int
        A 32-bit seed.
    """
    sequence = np.random.SeedSequence(int(master_seed), spawn_key=(int(stage_index), int(counter)))
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


def make_rng(seed):
    """Return a ``numpy.random.Generator`` for `seed` (a Generator is passed through)."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def check_finite(values, what, step=None, epoch=None, batch=None):
    """
    Raise a :py:class:`~fluidprior.exceptions.NumericalError` if `values`
    contains nan or inf.

    Parameters
    ----------
    values : array_like
        Values to check.
    what : str
        Name of the quantity, used in the message.
    step, epoch, batch : int, optional
        Location of the check, reported in the error.
    """
    if not np.all(np.isfinite(values)):
        raise NumericalError("non-finite {}".format(what), step=step, epoch=epoch, batch=batch)


def compensated_sum(values):
    """
    Sum of all entries of `values` with ``math.fsum``.

    The result does not depend on how the array is partitioned or ordered,
    which makes it suitable for conservation diagnostics.
    """
    return math.fsum(np.asarray(values, dtype=np.float64).ravel())


def make_folder(folder):
    """Create `folder` (and parents) if it does not exist and return it."""
    if folder and not os.path.isdir(folder):
        os.makedirs(folder)
    return folder


def format_float(value):
    """Float with 17 significant digits, which round-trips a float64 exactly."""
    return "{:.17g}".format(float(value))


def write_csv(filename, header, rows):
    """
    Write `rows` to a CSV file with a header line.

    Floats are written with :py:func:`format_float`, so reading them back with
    ``float`` gives the exact same numbers.
    """
    with open(filename, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_float(item) if isinstance(item, (float, np.floating)) else item
                             for item in row])


def read_csv(filename):
    """
    Read a CSV file written by :py:func:`write_csv`.

    Returns
    -------
    header : list of str
        The column names.
    rows : list of list of str
        The remaining rows, unparsed.
    """
    with open(filename, "r", newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        rows = [row for row in reader if row]
    return header, rows


def write_matrix_csv(filename, matrix, columns):
    """Write an N × len(columns) float matrix to CSV."""
    matrix = np.asarray(matrix, dtype=np.float64)
    write_csv(filename, columns, (list(row) for row in matrix))


def read_matrix_csv(filename):
    """Read a float matrix written by :py:func:`write_matrix_csv`."""
    header, rows = read_csv(filename)
    matrix = np.array([[float(item) for item in row] for row in rows], dtype=np.float64)
    return matrix.reshape(len(rows), len(header)), header
