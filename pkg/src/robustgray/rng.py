"""Counter-based RNG streams for reproducible, schedule-independent sampling.

Every random draw in the package comes from a Philox generator keyed by
(seed, domain, index).  Streams for different purposes never overlap, and
results cannot depend on how work is chunked across processes.
"""

from __future__ import annotations

import numpy as np

DOMAIN_TRIAL = 0       # one stream per Monte Carlo trial
DOMAIN_PFAIL = 1       # inner-code failure-rate estimation
DOMAIN_INNER_DRAW = 2  # drawing a random inner generator matrix

_MASK64 = 0xFFFFFFFFFFFFFFFF


def stream(seed: int, domain: int, index: int) -> np.random.Generator:
    """Independent generator for (seed, domain, index)."""
    if not 0 <= domain < 256:
        raise ValueError("domain out of range")
    if not 0 <= index < (1 << 56):
        raise ValueError("stream index out of range")
    key = np.array([seed & _MASK64, (domain << 56) | index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def randint_below(rng: np.random.Generator, bound: int) -> int:
    """Uniform int in [0, bound), exact for arbitrarily large bounds."""
    if bound < 1:
        raise ValueError("bound must be positive")
    nbits = (bound - 1).bit_length()
    if nbits == 0:
        return 0
    nwords = (nbits + 31) // 32
    mask = (1 << nbits) - 1
    while True:
        x = 0
        for _ in range(nwords):
            x = (x << 32) | int(rng.integers(0, 1 << 32, dtype=np.uint64))
        x &= mask
        if x < bound:
            return x
