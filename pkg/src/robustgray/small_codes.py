"""Auxiliary codes: unary, majority/repetition, and a small inner linear code.

All bit vectors are numpy uint8 arrays.  The inner code is decoded by
brute-force maximum likelihood over its full codeword table, which is the
point: its dimension is small enough that the table fits comfortably.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import DOMAIN_PFAIL, stream


def unary_encode(j: int, length: int, complement: bool = False) -> np.ndarray:
    """1^j 0^(length-j), or 0^j 1^(length-j) for the complementary variant."""
    if not 0 <= j <= length:
        raise ValueError(f"value {j} out of range for length {length}")
    out = np.zeros(length, dtype=np.uint8)
    if complement:
        out[j:] = 1
    else:
        out[:j] = 1
    return out


def _unary_distances(x: np.ndarray, complement: bool) -> np.ndarray:
    # dist[j] = Hamming distance from x to the length-|x| codeword for j,
    # computed for all j at once from the prefix count of ones.
    x = np.asarray(x, dtype=np.uint8)
    ell = len(x)
    ones_prefix = np.concatenate(([0], np.cumsum(x, dtype=np.int64)))
    total_ones = int(ones_prefix[-1])
    j = np.arange(ell + 1, dtype=np.int64)
    if complement:
        # ones among the first j, plus zeros among the last ell-j
        return ones_prefix + (ell - j) - (total_ones - ones_prefix)
    # zeros among the first j, plus ones among the last ell-j
    return (j - ones_prefix) + (total_ones - ones_prefix)


def unary_decode(x, complement: bool = False) -> int:
    """Closest unary value to x; ties broken toward the smallest value.

    Runs in time linear in len(x).
    """
    return int(np.argmin(_unary_distances(x, complement)))


def unary_decode_with_distance(x, complement: bool = False) -> tuple[int, int]:
    """Like unary_decode, but also return the achieved distance."""
    dists = _unary_distances(x, complement)
    j = int(np.argmin(dists))
    return j, int(dists[j])


def majority(bits) -> int:
    """Majority bit of an odd-length vector."""
    bits = np.asarray(bits)
    if len(bits) % 2 == 0:
        raise ValueError("majority vote needs an odd number of bits")
    return int(int(bits.sum()) * 2 > len(bits))


@dataclass(frozen=True)
class RepetitionCode:
    """Integer header code: binary expansion, each bit repeated rho times.

    Bits are least-significant first; rho must be odd so per-block majority
    votes cannot tie.
    """

    bit_count: int
    rho: int

    def __post_init__(self):
        if self.bit_count < 1:
            raise ValueError("bit_count must be >= 1")
        if self.rho < 1 or self.rho % 2 == 0:
            raise ValueError("rho must be a positive odd integer")

    @property
    def length(self) -> int:
        return self.rho * self.bit_count

    def encode(self, z: int) -> np.ndarray:
        if not 0 <= z < (1 << self.bit_count):
            raise ValueError(f"value {z} does not fit in {self.bit_count} bits")
        bits = [(z >> t) & 1 for t in range(self.bit_count)]
        return np.repeat(np.array(bits, dtype=np.uint8), self.rho)

    def decode(self, x) -> int:
        """Per-block majority vote, reassembled into an integer.

        The result can exceed the caller's valid range; range checking is
        the caller's job (an out-of-range value means the header is beyond
        repair for this trial).
        """
        x = np.asarray(x, dtype=np.uint8)
        if len(x) != self.length:
            raise ValueError(f"expected {self.length} bits, got {len(x)}")
        sums = x.reshape(self.bit_count, self.rho).sum(axis=1)
        z = 0
        for t, s in enumerate(sums):
            if int(s) * 2 > self.rho:
                z |= 1 << t
        return z


class InnerCode:
    """A binary [n', k'] linear code with a full codeword table.

    Messages are ints in [0, 2^k'); message bit t (LSB first) selects
    generator row t.  Decoding is brute-force maximum likelihood with ties
    broken toward the smaller message index.
    """

    def __init__(self, generator: np.ndarray):
        g = np.asarray(generator, dtype=np.uint8) & 1
        if g.ndim != 2:
            raise ValueError("generator must be a 2-d bit matrix")
        self.k = g.shape[0]
        self.n = g.shape[1]
        if self.k > self.n:
            raise ValueError("generator has more rows than columns")
        if _gf2_rank(g) != self.k:
            raise ValueError("generator matrix is not full rank")
        self.generator = g
        msgs = np.arange(1 << self.k, dtype=np.uint32)
        msg_bits = (msgs[:, None] >> np.arange(self.k)[None, :]) & 1
        self.table = (msg_bits.astype(np.uint8) @ g) & 1
        weights = self.table[1:].sum(axis=1)
        self.d_min = int(weights.min()) if len(weights) else self.n

    @classmethod
    def random(cls, k: int, n: int, rng: np.random.Generator) -> "InnerCode":
        """Draw generators from rng until one has full rank."""
        while True:
            g = rng.integers(0, 2, size=(k, n), dtype=np.uint8)
            if _gf2_rank(g) == k:
                return cls(g)

    @classmethod
    def from_file(cls, path) -> "InnerCode":
        """Load a generator matrix: one row per line of '0'/'1' characters."""
        rows = []
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                if set(line) - {"0", "1"}:
                    raise ValueError(f"bad generator row: {line!r}")
                rows.append([int(c) for c in line])
        if not rows:
            raise ValueError("generator file is empty")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("generator rows have unequal lengths")
        return cls(np.array(rows, dtype=np.uint8))

    def encode(self, message: int) -> np.ndarray:
        if not 0 <= message < (1 << self.k):
            raise ValueError(f"message {message} out of range")
        return self.table[message]

    def ml_decode(self, y) -> int:
        y = np.asarray(y, dtype=np.uint8)
        dists = (self.table ^ y).sum(axis=1)
        return int(np.argmin(dists))

    def ml_decode_many(self, ys: np.ndarray) -> np.ndarray:
        """Decode a (count, n') matrix of received words in one shot."""
        dists = (ys[:, None, :] ^ self.table[None, :, :]).sum(axis=2)
        return np.argmin(dists, axis=1)


def _gf2_rank(matrix: np.ndarray) -> int:
    m = (np.asarray(matrix, dtype=np.uint8) & 1).copy()
    rank = 0
    for col in range(m.shape[1]):
        pivot = None
        for row in range(rank, m.shape[0]):
            if m[row, col]:
                pivot = row
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        hits = np.nonzero(m[:, col])[0]
        for row in hits:
            if row != rank:
                m[row] ^= m[rank]
        rank += 1
        if rank == m.shape[0]:
            break
    return rank


def estimate_pfail(code: InnerCode, p: float, trials: int, seed: int,
                   sampled_messages: int = 32) -> float:
    """Monte Carlo estimate of the worst-case block failure rate on a BSC.

    The true quantity maximizes over every message; by the symmetry of ML
    decoding of a linear code this is sampled at message 0 plus up to
    `sampled_messages` random messages, and the max observed rate is
    returned.  It is an estimate, not a certificate.
    """
    if not 0 <= p < 0.5:
        raise ValueError("crossover probability must be in [0, 1/2)")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if p == 0:
        return 0.0
    total = 1 << code.k
    pick_rng = stream(seed, DOMAIN_PFAIL, 0)
    if total - 1 <= sampled_messages:
        messages = list(range(total))
    else:
        extra = pick_rng.choice(total - 1, size=sampled_messages, replace=False) + 1
        messages = [0] + sorted(int(v) for v in extra)
    worst = 0.0
    for idx, v in enumerate(messages):
        rng = stream(seed, DOMAIN_PFAIL, idx + 1)
        sent = code.table[v]
        noise = rng.random((trials, code.n)) < p
        received = sent[None, :] ^ noise.astype(np.uint8)
        decoded = code.ml_decode_many(received)
        rate = float(np.count_nonzero(decoded != v)) / trials
        worst = max(worst, rate)
    return worst
