"""Binary reflected code: encode, decode, and bit-flip bookkeeping.

Codewords are length-k bit vectors with coordinate 0 first; coordinate 0
is the one that flips on every odd step of the ordering.  Under this
convention coordinate t of the i-th codeword is bit t of i ^ (i >> 1).
"""

from __future__ import annotations

import numpy as np


def brc_encode(i: int, k: int) -> np.ndarray:
    """Return the i-th reflected-code word as a uint8 vector of length k."""
    if not 0 <= i < (1 << k):
        raise ValueError(f"index {i} out of range for k={k}")
    g = i ^ (i >> 1)
    return np.array([(g >> t) & 1 for t in range(k)], dtype=np.uint8)


def brc_decode(bits) -> int:
    """Inverse of brc_encode; a total bijection on {0,1}^k."""
    g = 0
    for t, b in enumerate(bits):
        g |= int(b) << t
    i = g
    shift = 1
    while i >> shift:
        i ^= i >> shift
        shift <<= 1
    return i


def flip_index(i: int, k: int) -> int:
    """Coordinate where codewords i-1 and i differ; 0 iff i is odd."""
    if not 1 <= i < (1 << k):
        raise ValueError(f"step index {i} out of range for k={k}")
    return (i & -i).bit_length() - 1


def flip_count(z: int, i: int, k: int) -> int:
    """Number of steps t in [1, i] whose flip coordinate equals z."""
    if not 0 <= z < k:
        raise ValueError(f"coordinate {z} out of range for k={k}")
    if not 0 <= i < (1 << k):
        raise ValueError(f"index {i} out of range for k={k}")
    return (i + (1 << z)) >> (z + 1)
