"""Binary symmetric channel sampling and the Monte Carlo tail-probability
harness.

Trial i draws everything it needs from a counter-based stream keyed by
(seed, i), so results are bitwise reproducible no matter how trials are
chunked across worker processes.
"""

from __future__ import annotations

import json
import math
import multiprocessing
from dataclasses import dataclass, field

import numpy as np

from .gray import GrayCodebook
from .rng import DOMAIN_TRIAL, randint_below, stream
from .rs import DecodeFailure

_CHUNK = 1024  # trials per task; fixed so the schedule cannot affect results


def bsc_sample(length: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Noise vector with each bit independently 1 with probability p."""
    if not 0 <= p <= 1:
        raise ValueError("p must be in [0, 1]")
    return (rng.random(length) < p).astype(np.uint8)


@dataclass(frozen=True)
class TrialRecord:
    """Outcome of one encode-corrupt-decode trial."""

    j: int
    j_hat: int | None
    deviation: int | None
    noise_weight: int
    branch: str  # "middle" | "boundary" | "rs-failure"


def run_single_trial(codebook: GrayCodebook, index: int, seed: int,
                     mode: str = "uniform-j",
                     fixed_j: int | None = None) -> TrialRecord:
    rng = stream(seed, DOMAIN_TRIAL, index)
    if mode == "fixed-j":
        j = fixed_j if fixed_j is not None else codebook.N // 2
    elif mode == "uniform-j":
        j = randint_below(rng, codebook.N)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    g = codebook.encode(j)
    eta = bsc_sample(codebook.params.d, codebook.params.p, rng)
    weight = int(eta.sum())
    try:
        j_hat, branch = codebook.decode_detailed(g ^ eta)
    except DecodeFailure:
        return TrialRecord(j, None, None, weight, "rs-failure")
    return TrialRecord(j, j_hat, abs(j - j_hat), weight, branch)


@dataclass
class ExperimentResult:
    """Aggregated tail table and bookkeeping for one experiment run."""

    trials: int
    seed: int
    mode: str
    t_grid: list[int]
    tail_counts: list[int]      # trials with deviation >= t (failures count)
    failures: int
    branch_middle: int
    branch_boundary: int
    deviation_sum: int
    params: dict = field(default_factory=dict)

    @property
    def successes(self) -> int:
        return self.trials - self.failures

    @property
    def failure_rate(self) -> float:
        return self.failures / self.trials

    @property
    def mean_abs_deviation(self) -> float | None:
        if self.successes == 0:
            return None
        return self.deviation_sum / self.successes

    def tail_rows(self) -> list[tuple[int, float, float, float]]:
        rows = []
        for t, count in zip(self.t_grid, self.tail_counts):
            est = count / self.trials
            lo, hi = wilson_interval(count, self.trials)
            rows.append((t, est, lo, hi))
        return rows

    def to_csv_text(self) -> str:
        lines = ["t,tail_estimate,ci_low,ci_high"]
        for t, est, lo, hi in self.tail_rows():
            lines.append(f"{t},{est!r},{lo!r},{hi!r}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "params": self.params,
            "seed": self.seed,
            "trials": self.trials,
            "mode": self.mode,
            "tail": [
                {"t": t, "tail_estimate": est, "ci_low": lo, "ci_high": hi}
                for t, est, lo, hi in self.tail_rows()
            ],
            "branches": {
                "middle": self.branch_middle,
                "boundary": self.branch_boundary,
                "rs_failure": self.failures,
            },
            "mean_abs_deviation": self.mean_abs_deviation,
            "rs_failure_rate": self.failure_rate,
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"


def wilson_interval(successes: int, total: int,
                    z: float = 1.959963984540054) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if total == 0:
        return 0.0, 1.0
    phat = successes / total
    denom = 1 + z * z / total
    center = (phat + z * z / (2 * total)) / denom
    half = z * math.sqrt(phat * (1 - phat) / total + z * z / (4 * total * total))
    half /= denom
    return max(0.0, center - half), min(1.0, center + half)


# worker context, set once per process by the pool initializer
_CTX: dict = {}


def _init_worker(codebook, seed, mode, fixed_j, t_grid):
    _CTX["args"] = (codebook, seed, mode, fixed_j, t_grid)


def _run_range(bounds: tuple[int, int]):
    codebook, seed, mode, fixed_j, t_grid = _CTX["args"]
    lo, hi = bounds
    tail = [0] * len(t_grid)
    failures = middle = boundary = 0
    dev_sum = 0
    for index in range(lo, hi):
        rec = run_single_trial(codebook, index, seed, mode, fixed_j)
        if rec.branch == "rs-failure":
            failures += 1
            for ti in range(len(t_grid)):
                tail[ti] += 1  # a lost trial exceeds every threshold
            continue
        if rec.branch == "middle":
            middle += 1
        else:
            boundary += 1
        dev_sum += rec.deviation
        for ti, t in enumerate(t_grid):
            if rec.deviation >= t:
                tail[ti] += 1
            else:
                break  # t_grid ascending
    return tail, failures, middle, boundary, dev_sum


def run_experiment(codebook: GrayCodebook, trials: int, t_grid: list[int],
                   seed: int, threads: int = 1, mode: str = "uniform-j",
                   fixed_j: int | None = None) -> ExperimentResult:
    """Run `trials` independent encode-corrupt-decode trials and tabulate
    the empirical deviation tail at each threshold in t_grid.

    Failed trials (outer decode found nothing in radius) count against
    every threshold, so the table never understates the tail.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not t_grid or list(t_grid) != sorted(t_grid):
        raise ValueError("t_grid must be a non-empty ascending list")
    if mode not in ("uniform-j", "fixed-j"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "fixed-j":
        fixed_j = codebook.N // 2 if fixed_j is None else fixed_j
        if not 0 <= fixed_j < codebook.N:
            raise ValueError(f"fixed j {fixed_j} out of range [0, {codebook.N})")
    t_grid = [int(t) for t in t_grid]
    ranges = [(a, min(a + _CHUNK, trials)) for a in range(0, trials, _CHUNK)]
    init_args = (codebook, seed, mode, fixed_j, t_grid)
    if threads <= 1 or len(ranges) == 1:
        _init_worker(*init_args)
        parts = [_run_range(r) for r in ranges]
    else:
        with multiprocessing.Pool(threads, initializer=_init_worker,
                                  initargs=init_args) as pool:
            parts = pool.map(_run_range, ranges)
    tail = [0] * len(t_grid)
    failures = middle = boundary = 0
    dev_sum = 0
    for part_tail, part_fail, part_mid, part_bound, part_dev in parts:
        tail = [a + b for a, b in zip(tail, part_tail)]
        failures += part_fail
        middle += part_mid
        boundary += part_bound
        dev_sum += part_dev
    p = codebook.params
    params_echo = {
        "p": p.p, "k": p.k, "k_in": p.k_in, "n_in": p.n_in, "B": p.B,
        "rho": p.rho, "beta": p.beta, "xi": p.xi,
        "n": p.n, "d": p.d, "N": codebook.N,
    }
    return ExperimentResult(
        trials=trials, seed=seed, mode=mode, t_grid=t_grid,
        tail_counts=tail, failures=failures, branch_middle=middle,
        branch_boundary=boundary, deviation_sum=dev_sum, params=params_echo)
