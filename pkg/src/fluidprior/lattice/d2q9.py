"""
The D2Q9 velocity set.

Directions are numbered

====  ========  ======  ========
 i    e_i       w_i     opposite
====  ========  ======  ========
 0    (0, 0)    4/9     0
 1    (1, 0)    1/9     3
 2    (0, 1)    1/9     4
 3    (-1, 0)   1/9     1
 4    (0, -1)   1/9     2
 5    (1, 1)    1/36    7
 6    (-1, 1)   1/36    8
 7    (-1, -1)  1/36    5
 8    (1, -1)   1/36    6
====  ========  ======  ========

Population arrays are indexed ``f[i, x, y]``.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import numpy as np

Q = 9

EX = np.array([0, 1, 0, -1, 0, 1, -1, -1, 1], dtype=np.int64)
EY = np.array([0, 0, 1, 0, -1, 1, 1, -1, -1], dtype=np.int64)

WEIGHTS = np.array([4/9, 1/9, 1/9, 1/9, 1/9, 1/36, 1/36, 1/36, 1/36], dtype=np.float64)

OPPOSITE = np.array([0, 3, 4, 1, 2, 7, 8, 5, 6], dtype=np.int64)

# Lattice speed of sound, c_s = 1/sqrt(3)
CS = 1/np.sqrt(3)
