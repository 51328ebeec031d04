"""Concatenated base code: outer Reed-Solomon composed with the inner
binary code, ordered by the binary reflected code.

The i-th codeword is the concatenated encoding of the reflected-code word
for i, so consecutive codewords differ by exactly one generator row.  Row
z corresponds to reflected-code coordinate z, which is bit (z mod k') of
outer message symbol (z div k'); symbols pack their k' bits least
significant first.
"""

from __future__ import annotations

import numpy as np

from .brc import brc_encode
from .rs import ReedSolomonCode
from .small_codes import InnerCode


def bits_to_symbols(bits, k: int, k_in: int) -> list[int]:
    """Split a k*k' bit vector into k field elements, LSB-first per block."""
    out = []
    for block in range(k):
        v = 0
        for t in range(k_in):
            v |= int(bits[block * k_in + t]) << t
        out.append(v)
    return out


def symbols_to_bits(symbols, k_in: int) -> np.ndarray:
    """Inverse of bits_to_symbols."""
    bits = []
    for s in symbols:
        bits.extend((int(s) >> t) & 1 for t in range(k_in))
    return np.array(bits, dtype=np.uint8)


class BaseCodebook:
    """Generator rows and ordered encoding of the concatenated code."""

    def __init__(self, outer: ReedSolomonCode, inner: InnerCode):
        if inner.k != outer.field.m:
            raise ValueError(
                f"inner dimension {inner.k} must match the field width "
                f"{outer.field.m}")
        self.outer = outer
        self.inner = inner
        self.n = outer.n
        self.k = outer.k
        self.k_in = inner.k
        self.n_in = inner.n
        self.dim = self.k * self.k_in       # kk', the ordering bit width
        self.bit_length = self.n * self.n_in

        self.symbol_rows: list[list[int]] = []
        self.bit_rows: list[np.ndarray] = []
        for z in range(self.dim):
            message = [0] * self.k
            message[z // self.k_in] = 1 << (z % self.k_in)
            symbols = outer.encode(message)
            self.symbol_rows.append(symbols)
            self.bit_rows.append(self._inner_expand(symbols))
        self.row_weights = [int(r.sum()) for r in self.bit_rows]

    def _inner_expand(self, symbols) -> np.ndarray:
        out = np.empty(self.bit_length, dtype=np.uint8)
        for m, s in enumerate(symbols):
            out[m * self.n_in:(m + 1) * self.n_in] = self.inner.table[s]
        return out

    def row(self, z: int) -> tuple[np.ndarray, list[int]]:
        """Bit-level and symbol-level views of generator row z."""
        if not 0 <= z < self.dim:
            raise ValueError(f"row index {z} out of range")
        return self.bit_rows[z], self.symbol_rows[z]

    def encode_index(self, i: int) -> tuple[np.ndarray, list[int]]:
        """The i-th codeword as (bits, outer symbols)."""
        if not 0 <= i < (1 << self.dim):
            raise ValueError(f"ordering index {i} out of range")
        message = bits_to_symbols(brc_encode(i, self.dim), self.k, self.k_in)
        symbols = self.outer.encode(message)
        return self._inner_expand(symbols), symbols
