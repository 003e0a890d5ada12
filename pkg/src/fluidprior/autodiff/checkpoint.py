"""
Named float64 arrays in a single binary file.

Layout, all little endian::

    bytes 0-3    magic "FLP1"
    u32          number of blocks
    per block:
      u32        name length in bytes
      bytes      UTF-8 name
      u32        rank
      u32 × rank extents
      float64    values, row major
"""
from __future__ import absolute_import, division, print_function, unicode_literals

from collections import OrderedDict

import numpy as np

from ..exceptions import FileFormatError


MAGIC = b"FLP1"

_U4 = np.dtype("<u4")
_F8 = np.dtype("<f8")


def save_checkpoint(filename, blocks):
    """
    Write named arrays to `filename`.

    Parameters
    ----------
    filename : str
        Output file.
    blocks : mapping
        Name to array. Arrays are stored as float64, in iteration order.
    """
    chunks = [MAGIC, np.array([len(blocks)], dtype=_U4).tobytes()]

    for name, value in blocks.items():
        value = np.asarray(value, dtype=_F8)
        encoded = name.encode("utf8")

        chunks.append(np.array([len(encoded)], dtype=_U4).tobytes())
        chunks.append(encoded)
        chunks.append(np.array([value.ndim] + list(value.shape), dtype=_U4).tobytes())
        chunks.append(np.ascontiguousarray(value).tobytes())

    with open(filename, "wb") as f:
        f.write(b"".join(chunks))


class _Reader(object):
    def __init__(self, filename, buffer):
        self.filename = filename
        self.buffer = buffer
        self.position = 0


    def take(self, count, what):
        end = self.position + count
        if end > len(self.buffer):
            raise FileFormatError("{}: truncated {}, expected {} bytes at offset {}, got {}".format(
                self.filename, what, count, self.position, len(self.buffer) - self.position))
        chunk = self.buffer[self.position:end]
        self.position = end
        return chunk


    def u32(self, what, count=1):
        return np.frombuffer(self.take(4*count, what), dtype=_U4).astype(np.int64)


def load_checkpoint(filename):
    """
    Read a checkpoint written by :py:func:`save_checkpoint`.

    Returns
    -------
    blocks : OrderedDict
        Name to float64 array, in file order.

    Raises
    ------
    FileFormatError
        If the magic bytes are wrong, the file is truncated or has trailing
        bytes.
    """
    with open(filename, "rb") as f:
        buffer = f.read()

    reader = _Reader(filename, buffer)
    magic = reader.take(4, "magic")
    if magic != MAGIC:
        raise FileFormatError("{}: bad magic {!r}, expected {!r}".format(filename, magic, MAGIC))

    count = int(reader.u32("block count")[0])

    blocks = OrderedDict()
    for _ in range(count):
        length = int(reader.u32("name length")[0])
        name = reader.take(length, "name").decode("utf8")
        rank = int(reader.u32("rank of " + name)[0])
        shape = tuple(int(extent) for extent in reader.u32("extents of " + name, rank))
        size = int(np.prod(shape, dtype=np.int64))
        values = np.frombuffer(reader.take(8*size, "data of " + name), dtype=_F8)
        blocks[name] = values.reshape(shape).astype(np.float64)

    if reader.position != len(buffer):
        raise FileFormatError("{}: {} trailing bytes after {} blocks".format(filename, len(buffer) - reader.position, count))

    return blocks
