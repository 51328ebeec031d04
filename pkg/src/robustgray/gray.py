"""The robust Gray code: parameter bundle, codeword layout, encoder and
noisy-channel decoder.

A codeword is a length-d bit vector laid out as

    header | s_1 | payload_1 | s_2 | payload_2 | ... | payload_n | s_{n+1}

where the header repetition-encodes the generator-row index of the last
ordering step, each s_m is a length-B run of the parity bit (index mod 2),
and payload m is the inner encoding of outer symbol m.  Consecutive
intermediate words w_{i-1}, w_i differ in every buffer bit, one generator
row, and the header; the final code walks those differing positions one
bit at a time, so adjacent codewords differ in exactly one position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .brc import brc_decode, flip_index
from .concat import BaseCodebook, symbols_to_bits
from .gf2m import GF2m
from .rng import DOMAIN_INNER_DRAW, stream
from .rs import DecodeFailure, ReedSolomonCode
from .small_codes import (InnerCode, RepetitionCode, unary_decode,
                          unary_decode_with_distance)


@dataclass(frozen=True)
class CodeParams:
    """Structural parameters.  The outer code always evaluates on all of
    F_q*, so its block length is n = 2^k_in - 1.
    """

    p: float       # channel crossover probability
    k: int         # outer message length
    k_in: int      # inner dimension; the outer field is GF(2^k_in)
    n_in: int      # inner block length
    B: int         # buffer length (odd)
    rho: int       # header repetitions per bit (odd)
    beta: float    # boundary fraction
    xi: float      # slack factor in the outer-distance constraint

    def __post_init__(self):
        if not 0 <= self.p < 0.5:
            raise ValueError("p must be in [0, 1/2)")
        if not 2 <= self.k_in <= 16:
            raise ValueError("k_in must be in [2, 16]")
        if not 1 <= self.k < self.n:
            raise ValueError(f"k must be in [1, {self.n}), got {self.k}")
        if self.dim < 2:
            raise ValueError("k * k_in must be at least 2")
        if self.n_in < self.k_in:
            raise ValueError("n_in must be at least k_in")
        if self.B < 1 or self.B % 2 == 0:
            raise ValueError("B must be a positive odd integer")
        if self.rho < 1 or self.rho % 2 == 0:
            raise ValueError("rho must be a positive odd integer")
        if not 0 < self.beta < 0.25:
            raise ValueError("beta must be in (0, 1/4)")
        if self.xi <= 0:
            raise ValueError("xi must be positive")

    @property
    def q(self) -> int:
        return 1 << self.k_in

    @property
    def n(self) -> int:
        return self.q - 1

    @property
    def dim(self) -> int:
        """Bit width of the intermediate-code ordering (k * k_in)."""
        return self.k * self.k_in

    @property
    def bit_count(self) -> int:
        """Header bits needed to name a generator row."""
        return (self.dim - 1).bit_length()

    @property
    def L(self) -> int:
        return self.rho * self.bit_count

    @property
    def d(self) -> int:
        return self.n * self.n_in + self.B * (self.n + 1) + self.L

    @property
    def delta_out(self) -> float:
        return (self.n - self.k + 1) / self.n

    @property
    def c_p(self) -> float:
        """Buffer-majority exponent p*(1/(2p) - 1)^2 / 3."""
        if self.p == 0:
            return math.inf
        return self.p * (1 / (2 * self.p) - 1) ** 2 / 3

    def theorem_constraints(self, pfail: float) -> list[tuple[str, float, float, bool]]:
        """Evaluate the validity inequalities given an inner failure-rate
        estimate.  Returns (description, lhs, rhs, satisfied) tuples."""
        buf = 2 * math.exp(-self.c_p * self.B) if self.c_p != math.inf else 0.0
        outer = 2 * (1 + self.xi) * pfail + 2 * self.beta
        return [
            ("2*exp(-C_p*B) < beta", buf, self.beta, buf < self.beta),
            ("beta < 1/4", self.beta, 0.25, self.beta < 0.25),
            ("2*(1+xi)*pfail + 2*beta < delta_out",
             outer, self.delta_out, outer < self.delta_out),
        ]


class ChunkView:
    """Precomputed slice geometry of a length-d word."""

    def __init__(self, params: CodeParams):
        L, B, n_in, n = params.L, params.B, params.n_in, params.n
        self.n = n
        self.header = slice(0, L)
        step = B + n_in
        buf_starts = L + np.arange(n + 1) * step
        self.buffer_idx = buf_starts[:, None] + np.arange(B)[None, :]
        pay_starts = L + np.arange(n) * step + B
        self.payload_idx = pay_starts[:, None] + np.arange(n_in)[None, :]
        self.payload_flat = self.payload_idx.reshape(-1)
        if L + (n + 1) * B + n * n_in != params.d:
            raise AssertionError("chunk lengths do not partition the word")

    def header_of(self, x: np.ndarray) -> np.ndarray:
        return x[self.header]

    def buffer_of(self, x: np.ndarray, m: int) -> np.ndarray:
        """Buffer s_m, 1 <= m <= n+1."""
        return x[self.buffer_idx[m - 1]]

    def payload_of(self, x: np.ndarray, m: int) -> np.ndarray:
        """Payload chunk m, 1 <= m <= n."""
        return x[self.payload_idx[m - 1]]


class GrayCodebook:
    """Everything needed to encode and decode: parameters, the generator
    rows of the concatenated code, chunk geometry, and per-row weights.

    Immutable after construction and safe to share across processes.
    """

    def __init__(self, params: CodeParams, inner: InnerCode | None = None,
                 seed: int | None = None):
        self.params = params
        field = GF2m(params.k_in)
        outer = ReedSolomonCode(field, params.k)
        if inner is None:
            if seed is None:
                raise ValueError("provide an inner code or a seed to draw one")
            inner = InnerCode.random(params.k_in, params.n_in,
                                     stream(seed, DOMAIN_INNER_DRAW, 0))
        if inner.k != params.k_in or inner.n != params.n_in:
            raise ValueError(
                f"inner code is [{inner.n},{inner.k}], parameters want "
                f"[{params.n_in},{params.k_in}]")
        self.field = field
        self.outer = outer
        self.inner = inner
        self.base = BaseCodebook(outer, inner)
        self.rep = RepetitionCode(params.bit_count, params.rho)
        self.chunks = ChunkView(params)

        p = params
        self.size = 1 << p.dim                  # intermediate codewords
        self._step_base = (p.n + 1) * p.B
        self._row_cost = [
            self.base.row_weights[z] + 2 * p.rho * _popcount(z)
            for z in range(p.dim)
        ]
        self._header_weight = [p.rho * _popcount(z) for z in range(p.dim)]
        self.N = self.compr(self.size - 1)

    # -- intermediate code ------------------------------------------------

    def step_row(self, i: int) -> int:
        """Generator-row index of the step into word i (0 for i = 0)."""
        return flip_index(i, self.params.dim) if i > 0 else 0

    def make_w(self, i: int) -> np.ndarray:
        """The i-th intermediate codeword."""
        if not 0 <= i < self.size:
            raise ValueError(f"intermediate index {i} out of range")
        bits, _ = self.base.encode_index(i)
        w = np.full(self.params.d, i & 1, dtype=np.uint8)
        w[self.chunks.header] = self.rep.encode(self.step_row(i))
        w[self.chunks.payload_flat] = bits
        return w

    def compr(self, i: int) -> int:
        """Cumulative Hamming distance along w_0, w_1, ..., w_i.

        Row z is used floor((i + 2^z) / 2^(z+1)) times among the first i
        steps; each use costs its row weight plus a header rewrite of
        2*rho*popcount(z), except that the final step's header rewrite is
        only half paid when i is even (the return of the header to the
        all-zero row name happens on step i+1, which is not included).
        """
        if not 0 <= i < self.size:
            raise ValueError(f"intermediate index {i} out of range")
        total = i * self._step_base
        for z in range(self.params.dim):
            total += ((i + (1 << z)) >> (z + 1)) * self._row_cost[z]
        if i >= 2 and i % 2 == 0:
            total -= self._header_weight[self.step_row(i)]
        return total

    # -- final code --------------------------------------------------------

    def interval_of(self, j: int, hint: int | None = None) -> int:
        """The i with compr(i) <= j < compr(i+1), by binary search."""
        if not 0 <= j < self.N:
            raise ValueError(f"index {j} out of range [0, {self.N})")
        if hint is not None:
            for i in (hint, hint + 1, hint - 1):
                if 0 <= i <= self.size - 2 and self.compr(i) <= j < self.compr(i + 1):
                    return i
        lo, hi = 0, self.size - 2
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.compr(mid) <= j:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def encode(self, j: int, hint: int | None = None) -> np.ndarray:
        """Codeword for j: the intermediate word at the start of j's
        interval, with the first j - r_i differing-from-the-next-word bits
        already flipped."""
        i = self.interval_of(j, hint)
        w_i = self.make_w(i)
        jbar = j - self.compr(i)
        if jbar == 0:
            return w_i
        w_next = self.make_w(i + 1)
        diff = np.nonzero(w_i != w_next)[0]
        w_i[diff[:jbar]] = w_next[diff[:jbar]]
        return w_i

    def decode(self, x) -> int:
        """Estimate of j from a (possibly noisy) word."""
        return self.decode_detailed(x)[0]

    def decode_detailed(self, x) -> tuple[int, str]:
        """Decode and report which branch ran ('middle' or 'boundary').

        Raises DecodeFailure when the outer decode finds no codeword in
        radius or the header is beyond repair.
        """
        x = np.asarray(x, dtype=np.uint8)
        p = self.params
        if len(x) != p.d:
            raise ValueError(f"expected {p.d} bits, got {len(x)}")
        buffers = x[self.chunks.buffer_idx]
        s_hat = (buffers.sum(axis=1) * 2 > p.B).astype(np.uint8)
        l1, dist1 = unary_decode_with_distance(s_hat, complement=False)
        l2, dist2 = unary_decode_with_distance(s_hat, complement=True)
        lhat = l1 if dist1 < dist2 else l2
        sigma_hat = self.inner.ml_decode_many(x[self.chunks.payload_idx])
        if p.beta * p.n < lhat < p.n - p.beta * p.n:
            return self._estimate_middle(x, sigma_hat, lhat), "middle"
        return self._estimate_boundary(x, sigma_hat, lhat), "boundary"

    # -- decoder branches ---------------------------------------------------

    def _decode_interval_index(self, received: list[int | None]) -> int:
        message = self.outer.decode(received)
        return brc_decode(symbols_to_bits(message, self.params.k_in))

    def _clamp(self, j: int) -> int:
        return min(max(j, 0), self.N - 1)

    def _estimate_middle(self, x, sigma_hat, lhat) -> int:
        """Crossover chunk is away from the ends: translate the symbols
        left of it back by the header row, erase a window around it, and
        refine with the unary structure of the differing positions."""
        p = self.params
        cbn = math.ceil(p.beta * p.n)
        ms, me = lhat - cbn, lhat + cbn
        z_hat = self.rep.decode(x[self.chunks.header])
        if z_hat >= p.dim:
            raise DecodeFailure(f"header row index {z_hat} out of range")
        row_sym = self.base.symbol_rows[z_hat]
        received: list[int | None] = []
        for m in range(1, p.n + 1):
            if m < ms:
                received.append(int(sigma_hat[m - 1]) ^ row_sym[m - 1])
            elif m <= me:
                received.append(None)
            else:
                received.append(int(sigma_hat[m - 1]))
        i_hat = self._decode_interval_index(received)
        j_hat = self.compr(i_hat)
        if i_hat + 1 < self.size:
            w_i = self.make_w(i_hat)
            w_next = self.make_w(i_hat + 1)
            diff = np.nonzero(w_i != w_next)[0]
            j_hat += unary_decode(x[diff] ^ w_i[diff])
        return self._clamp(j_hat)

    def _estimate_boundary(self, x, sigma_hat, lhat) -> int:
        """Crossover chunk is near an end, so it is only located modulo
        wrap-around: erase both edge windows, then try both readings
        (just past the interval start, or just before its end) and keep
        the candidate closer to the received word."""
        p = self.params
        cbn = math.ceil(p.beta * p.n)
        if lhat <= p.beta * p.n:
            me = lhat + cbn
            ms = p.n + 1 + lhat - cbn
        else:
            me = lhat + cbn - (p.n + 1)
            ms = lhat - cbn
        received: list[int | None] = [
            None if (m <= me or m >= ms) else int(sigma_hat[m - 1])
            for m in range(1, p.n + 1)
        ]
        i_hat = self._decode_interval_index(received)
        r_i = self.compr(i_hat)
        w_i = self.make_w(i_hat)
        window = 2 * cbn * (p.n_in + p.B)
        candidates: list[int] = []
        if i_hat + 1 < self.size:
            w_next = self.make_w(i_hat + 1)
            diff = np.nonzero(w_i != w_next)[0]
            head = diff[diff < p.L + window]
            jbar = unary_decode(x[head] ^ w_i[head])
            candidates.append(self._clamp(r_i + jbar))
        if i_hat > 0:
            w_prev = self.make_w(i_hat - 1)
            diff = np.nonzero(w_i != w_prev)[0]
            tail = diff[diff >= p.d - window]
            # the complementary decoder finds the 0->1 transition; the
            # flips still pending before w_i is reached sit after it
            pending = len(tail) - unary_decode(x[tail] ^ w_i[tail],
                                               complement=True)
            candidates.append(self._clamp(r_i - pending))
        best = None
        best_dist = None
        for cand in candidates:
            g = self.encode(cand, hint=i_hat)
            dist = int(np.count_nonzero(x != g))
            if best is None or dist < best_dist:
                best, best_dist = cand, dist
        return best

    # -- reporting ----------------------------------------------------------

    def rate(self) -> float:
        return math.log2(self.N) / self.params.d

    def rate_lower_bound(self) -> float:
        """Product of the component rates over the relative length overhead
        of buffers and header."""
        p = self.params
        r_out = p.k / p.n
        r_in = p.k_in / p.n_in
        overhead = 1 + (p.B / p.n_in) * (1 + 1 / p.n) + p.L / (p.n * p.n_in)
        return r_out * r_in / overhead


def _popcount(v: int) -> int:
    return bin(v).count("1")
