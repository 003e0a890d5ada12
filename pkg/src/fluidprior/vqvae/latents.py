from __future__ import absolute_import, division, print_function, unicode_literals

import numpy as np

from ..exceptions import FileFormatError
from ..utils.utility import parallel_map, write_csv, read_csv
from .model import quantize


class LatentTable(object):
    """
    The encoded dataset.

    Parameters
    ----------
    latents : array
        Continuous latents z_e, shape (N, D).
    codes : array
        Codebook index of every row.
    snapshots : array, optional
        Snapshot index of every row. Default is ``arange(N)``.

    Attributes
    ----------
    mean, std : array
        Per-dimension mean and (population) standard deviation of the
        continuous latents, computed in two passes.
    """
    def __init__(self, latents, codes, snapshots=None):
        self.latents = np.asarray(latents, dtype=np.float64)
        if self.latents.ndim != 2:
            raise ValueError("latents must be an N × D array, got shape {}".format(self.latents.shape))

        self.codes = np.asarray(codes, dtype=np.int64)
        if snapshots is None:
            snapshots = np.arange(len(self.latents))
        self.snapshots = np.asarray(snapshots, dtype=np.int64)

        if not len(self.codes) == len(self.snapshots) == len(self.latents):
            raise ValueError("latents, codes and snapshot indices differ in length")

        self.mean = self.latents.mean(axis=0)
        self.std = np.sqrt(((self.latents - self.mean)**2).mean(axis=0))


    def __len__(self):
        return len(self.latents)


    @property
    def dimension(self):
        return self.latents.shape[1]


    def header(self):
        return ["snapshot", "code"] + ["z{}".format(i) for i in range(self.dimension)]


    def save(self, filename):
        """Write ``snapshot,code,z0..z{D-1}``, one row per snapshot."""
        rows = ([int(snapshot), int(code)] + list(latent)
                for snapshot, code, latent in zip(self.snapshots, self.codes, self.latents))
        write_csv(filename, self.header(), rows)


    @classmethod
    def load(cls, filename):
        header, rows = read_csv(filename)
        if header[:2] != ["snapshot", "code"] or len(header) < 3:
            raise FileFormatError("{} is not a latent table, header is {}".format(filename, header))

        if not rows:
            raise FileFormatError("{} contains no latents".format(filename))

        snapshots = [int(row[0]) for row in rows]
        codes = [int(row[1]) for row in rows]
        latents = [[float(value) for value in row[2:]] for row in rows]
        return cls(latents, codes, snapshots)



def encode_dataset(model, dataset, CPUs=None, chunk_size=64, disable=True):
    """
    Encode every snapshot and quantize the latents.

    The model is only read, so chunks can be encoded in parallel; the result
    does not depend on `CPUs`.

    Parameters
    ----------
    model : VqVaeModel
        Trained model, switched to evaluation mode.
    dataset : array
        Snapshots, shape (N, nx, ny).
    CPUs : {int, None, "max"}, optional
        Worker processes. Default is None (serial).
    chunk_size : int, optional
        Snapshots per chunk. Default is 64.
    disable : bool, optional
        Hide the progress bar. Default is True.

    Returns
    -------
    table : LatentTable
    """
    dataset = np.asarray(dataset)
    if dataset.ndim != 3 or len(dataset) == 0:
        raise ValueError("dataset must be a nonempty array of snapshots, got shape {}".format(dataset.shape))

    model.eval()

    def encode_chunk(start):
        return model.encode_batch(dataset[start:start + chunk_size]).data

    chunks = parallel_map(encode_chunk, range(0, len(dataset), chunk_size),
                          CPUs=CPUs, desc="Encoding snapshots", disable=disable)
    latents = np.concatenate(chunks, axis=0)
    codes, _ = quantize(latents, model.codebook.data)

    return LatentTable(latents, codes)
