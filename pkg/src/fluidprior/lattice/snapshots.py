"""
Reading and writing vorticity snapshot datasets.

File layout, all little endian::

    bytes 0-3    magic "FLQ1"
    u32          nx
    u32          ny
    u32          count
    u32          reserved (0)
    float32      count × ny × nx values, x fastest

Arrays in memory are indexed ``[snapshot, x, y]``.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import os

import numpy as np

from ..exceptions import FileFormatError


MAGIC = b"FLQ1"
HEADER = np.dtype([("magic", "S4"), ("nx", "<u4"), ("ny", "<u4"), ("count", "<u4"), ("reserved", "<u4")])


def write_snapshots(filename, snapshots):
    """
    Write a ``count × nx × ny`` array to `filename`, as float32.

    Parameters
    ----------
    filename : str
        Output file.
    snapshots : array_like
        Vorticity fields indexed ``[snapshot, x, y]``.
    """
    data = np.asarray(snapshots)
    if data.ndim == 2:
        data = data[None]
    if data.ndim != 3:
        raise ValueError("snapshots must have shape count × nx × ny, got {}".format(data.shape))

    count, nx, ny = data.shape

    header = np.zeros(1, dtype=HEADER)
    header["magic"] = MAGIC
    header["nx"] = nx
    header["ny"] = ny
    header["count"] = count

    payload = np.ascontiguousarray(np.transpose(data, (0, 2, 1)), dtype="<f4")

    with open(filename, "wb") as f:
        f.write(header.tobytes())
        f.write(payload.tobytes())


def read_header(filename):
    """
    Read and validate the header of a snapshot file.

    Returns
    -------
    nx, ny, count : int

    Raises
    ------
    FileFormatError
        If the magic bytes are wrong or the file size does not match the
        header.
    """
    size = os.path.getsize(filename)
    if size < HEADER.itemsize:
        raise FileFormatError("{}: truncated header, expected {} bytes, got {}".format(filename, HEADER.itemsize, size))

    header = np.fromfile(filename, dtype=HEADER, count=1)[0]
    if header["magic"] != MAGIC:
        raise FileFormatError("{}: bad magic {!r}, expected {!r}".format(filename, bytes(header["magic"]), MAGIC))

    nx, ny, count = int(header["nx"]), int(header["ny"]), int(header["count"])

    expected = HEADER.itemsize + 4*nx*ny*count
    if size < expected:
        raise FileFormatError("{}: truncated payload, expected {} bytes, got {}".format(filename, expected, size))
    if size > expected:
        raise FileFormatError("{}: header nx·ny·count = {}·{}·{} disagrees with file size, expected {} bytes, got {}".format(
            filename, nx, ny, count, expected, size))

    return nx, ny, count


def read_snapshots(filename):
    """
    Read a snapshot file.

    Returns
    -------
    snapshots : array
        float32 array indexed ``[snapshot, x, y]``.
    """
    nx, ny, count = read_header(filename)

    payload = np.fromfile(filename, dtype="<f4", offset=HEADER.itemsize, count=nx*ny*count)
    return np.ascontiguousarray(payload.reshape(count, ny, nx).transpose(0, 2, 1)).astype(np.float32)


def snapshot_io(mode, filename, snapshots=None):
    """
    Single entry point for snapshot files: ``snapshot_io("write", path, data)``
    or ``snapshot_io("read", path)``.
    """
    if mode == "write":
        if snapshots is None:
            raise ValueError("snapshot_io('write') needs the snapshots")
        write_snapshots(filename, snapshots)
        return snapshots
    elif mode == "read":
        return read_snapshots(filename)

    raise ValueError("mode must be 'read' or 'write', not {}".format(mode))
