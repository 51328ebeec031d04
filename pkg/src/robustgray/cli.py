"""Command-line front end.

Subcommands: validate, encode, decode, simulate, preset.  Options can come
from a flat `key = value` config file (--config) with individual flags
overriding file values.  Every randomized command requires an explicit
--seed; there is no wall-clock default.

Exit codes: 0 ok, 1 invalid config or arguments, 2 decoding-pipeline
failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .channel import run_experiment
from .gray import CodeParams, GrayCodebook
from .rs import DecodeFailure
from .small_codes import InnerCode, estimate_pfail

PFAIL_TRIALS = 2000  # Monte Carlo budget for the inner failure-rate estimate

_DEFAULTS = {
    "beta": 0.05,
    "xi": 0.5,
    "trials": 1000,
    "t_grid": [1, 10, 100, 1000],
    "threads": 1,
    "format": "csv",
    "mode": "uniform-j",
}

_INT_KEYS = {"q", "k", "inner_n", "B", "rho", "trials", "seed", "threads",
             "fixed_j"}
_FLOAT_KEYS = {"p", "beta", "xi", "epsilon"}
_STR_KEYS = {"format", "out", "mode", "inner_generator_file"}


class ConfigError(Exception):
    pass


def _parse_t_grid(text: str) -> list[int]:
    try:
        values = sorted({int(v) for v in text.split(",") if v.strip() != ""})
    except ValueError as exc:
        raise ConfigError(f"bad t_grid {text!r}: {exc}") from None
    if not values:
        raise ConfigError("t_grid must contain at least one threshold")
    return values


def _coerce(key: str, raw: str):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        if key == "t_grid":
            return _parse_t_grid(raw)
        if key in _STR_KEYS:
            return raw
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r} ({exc})") from None
    raise ConfigError(f"unknown config key {key!r}")


def _load_config_file(path: str) -> dict:
    out = {}
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
                key, _, raw = line.partition("=")
                out[key.strip()] = _coerce(key.strip(), raw.strip())
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    return out


def _merge_config(args: argparse.Namespace) -> dict:
    cfg = dict(_DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(_load_config_file(args.config))
    for key in ("p", "q", "k", "inner_n", "B", "rho", "beta", "xi", "trials",
                "seed", "threads", "format", "out", "mode", "fixed_j",
                "inner_generator_file", "epsilon"):
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    if getattr(args, "t_grid", None) is not None:
        cfg["t_grid"] = _parse_t_grid(args.t_grid)
    return cfg


def _require(cfg: dict, keys: list[str]) -> None:
    missing = [k for k in keys if cfg.get(k) is None]
    if missing:
        raise ConfigError(
            "missing required option(s): " + ", ".join(f"--{k.replace('_', '-')}"
                                                       for k in missing))


def _params_from_config(cfg: dict) -> CodeParams:
    _require(cfg, ["p", "q", "k", "inner_n", "B", "rho"])
    q = cfg["q"]
    k_in = q.bit_length() - 1
    if q < 4 or (1 << k_in) != q:
        raise ConfigError(f"q must be a power of two in [4, 65536], got {q}")
    try:
        return CodeParams(p=cfg["p"], k=cfg["k"], k_in=k_in,
                          n_in=cfg["inner_n"], B=cfg["B"], rho=cfg["rho"],
                          beta=cfg["beta"], xi=cfg["xi"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _codebook_from_config(cfg: dict, params: CodeParams) -> GrayCodebook:
    gen_file = cfg.get("inner_generator_file")
    if gen_file:
        try:
            inner = InnerCode.from_file(gen_file)
        except OSError as exc:
            raise ConfigError(f"cannot read generator file: {exc}") from None
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return GrayCodebook(params, inner=inner)
    if cfg.get("seed") is None:
        raise ConfigError("provide --seed (to draw the inner code) or "
                          "--inner-generator-file")
    return GrayCodebook(params, seed=cfg["seed"])


def _validation_report(cfg: dict, params: CodeParams,
                       codebook: GrayCodebook, out) -> bool:
    _require(cfg, ["seed"])
    pfail = estimate_pfail(codebook.inner, params.p, cfg["trials"] or PFAIL_TRIALS,
                           cfg["seed"])
    print(f"C_p = {params.c_p:.6g}", file=out)
    print(f"pfail estimate (sampled, not a certificate) = {pfail:.6g}", file=out)
    all_ok = True
    for name, lhs, rhs, ok in params.theorem_constraints(pfail):
        status = "PASS" if ok else "FAIL"
        print(f"[{status}] {name}: {lhs:.6g} vs {rhs:.6g}", file=out)
        all_ok = all_ok and ok
    print(f"d = {params.d}", file=out)
    print(f"N = {codebook.N}", file=out)
    print(f"rate = {codebook.rate():.6g} "
          f"(lower bound {codebook.rate_lower_bound():.6g})", file=out)
    print(f"inner code d_min = {codebook.inner.d_min}", file=out)
    return all_ok


def _cmd_validate(args) -> int:
    cfg = _merge_config(args)
    params = _params_from_config(cfg)
    codebook = _codebook_from_config(cfg, params)
    ok = _validation_report(cfg, params, codebook, sys.stdout)
    return 0 if ok else 1


def _cmd_encode(args) -> int:
    cfg = _merge_config(args)
    params = _params_from_config(cfg)
    codebook = _codebook_from_config(cfg, params)
    j = args.j
    if not 0 <= j < codebook.N:
        raise ConfigError(f"j must be in [0, {codebook.N}), got {j}")
    word = codebook.encode(j)
    print("".join(str(b) for b in word))
    print(f"d = {params.d}")
    print(f"interval = {codebook.interval_of(j)}")
    return 0


def _cmd_decode(args) -> int:
    cfg = _merge_config(args)
    params = _params_from_config(cfg)
    codebook = _codebook_from_config(cfg, params)
    text = args.word.strip()
    if set(text) - {"0", "1"} or len(text) != params.d:
        raise ConfigError(f"word must be {params.d} characters of 0/1")
    x = np.array([int(c) for c in text], dtype=np.uint8)
    try:
        j_hat, branch = codebook.decode_detailed(x)
    except DecodeFailure as exc:
        print(f"decode failure: {exc}", file=sys.stderr)
        return 2
    print(f"j_hat = {j_hat}")
    print(f"branch = {branch}")
    return 0


def _cmd_simulate(args) -> int:
    cfg = _merge_config(args)
    params = _params_from_config(cfg)
    _require(cfg, ["seed"])
    codebook = _codebook_from_config(cfg, params)
    pfail = estimate_pfail(codebook.inner, params.p, PFAIL_TRIALS, cfg["seed"])
    bad = [name for name, _, _, ok in params.theorem_constraints(pfail) if not ok]
    if bad:
        print("invalid config, failed constraint(s): " + "; ".join(bad),
              file=sys.stderr)
        return 1
    if cfg["format"] not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg['format']!r}")
    result = run_experiment(
        codebook, trials=cfg["trials"], t_grid=cfg["t_grid"], seed=cfg["seed"],
        threads=cfg["threads"], mode=cfg["mode"], fixed_j=cfg.get("fixed_j"))
    text = result.to_csv_text() if cfg["format"] == "csv" else result.to_json_text()
    out_path = cfg.get("out")
    if out_path:
        try:
            with open(out_path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cannot write results: {exc}", file=sys.stderr)
            return 3
    else:
        sys.stdout.write(text)
    return 0


def _cmd_preset(args) -> int:
    cfg = _merge_config(args)
    _require(cfg, ["epsilon", "q", "inner_n", "p"])
    eps, p, q, n_in = cfg["epsilon"], cfg["p"], cfg["q"], cfg["inner_n"]
    k_in = q.bit_length() - 1
    if q < 4 or (1 << k_in) != q:
        raise ConfigError(f"q must be a power of two in [4, 65536], got {q}")
    if not 0 < eps < 2:
        raise ConfigError("epsilon must be in (0, 2)")
    n = q - 1
    shave = math.ceil(eps * n / 2)       # distance eps/2 of n, rounded up
    k = n - shave + 1
    if k >= n:
        raise ConfigError(
            f"epsilon {eps} is too small for q = {q}: the outer code cannot "
            f"reserve any distance (need epsilon*n > 2, n = {n})")
    if k < 1:
        raise ConfigError(f"epsilon {eps} is too large for q = {q}: no "
                          f"message symbols left")
    bit_count = (k * k_in - 1).bit_length()
    header_budget = eps / 8 * n * n_in
    rho = int(header_budget // bit_count)
    if rho % 2 == 0:
        rho -= 1
    if rho < 1:
        raise ConfigError(
            f"epsilon {eps} is too small for q = {q}, inner_n = {n_in}: the "
            f"header budget {header_budget:.3g} cannot fit {bit_count} "
            f"repetition-coded bits")
    delta_out = eps / 2
    beta = min(0.2, delta_out / 4)
    cp = math.inf if p == 0 else p * (1 / (2 * p) - 1) ** 2 / 3
    B = 1
    while 2 * math.exp(-cp * B) >= beta:
        B += 2
    params = CodeParams(p=p, k=k, k_in=k_in, n_in=n_in, B=B, rho=rho,
                        beta=beta, xi=cfg["xi"])
    lines = [
        f"p = {p!r}",
        f"q = {q}",
        f"k = {k}",
        f"inner_n = {n_in}",
        f"B = {B}",
        f"rho = {rho}",
        f"beta = {beta!r}",
        f"xi = {cfg['xi']!r}",
    ]
    config_text = "\n".join(lines) + "\n"
    out_path = cfg.get("out")
    if out_path:
        try:
            with open(out_path, "w") as fh:
                fh.write(config_text)
        except OSError as exc:
            print(f"cannot write config: {exc}", file=sys.stderr)
            return 3
    else:
        sys.stdout.write(config_text)
    codebook = _codebook_from_config(cfg, params)
    ok = _validation_report(cfg, params, codebook, sys.stdout)
    r_in = k_in / n_in
    print(f"target rate R_in - epsilon = {r_in - eps:.6g}")
    achieved = codebook.rate_lower_bound()
    print(f"achieved rate lower bound = {achieved:.6g} "
          f"({'meets' if achieved >= r_in - eps else 'misses'} the target)")
    return 0 if ok else 1


def _add_common_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="flat key = value config file")
    sub.add_argument("--p", type=float, help="channel crossover probability")
    sub.add_argument("--q", type=int, help="outer field order (power of two)")
    sub.add_argument("--k", type=int, help="outer message length")
    sub.add_argument("--inner-n", dest="inner_n", type=int,
                     help="inner code block length")
    sub.add_argument("--B", type=int, help="buffer length (odd)")
    sub.add_argument("--rho", type=int, help="header repetitions per bit (odd)")
    sub.add_argument("--beta", type=float, help="boundary fraction in (0, 1/4)")
    sub.add_argument("--xi", type=float, help="outer-constraint slack")
    sub.add_argument("--trials", type=int, help="Monte Carlo trial count")
    sub.add_argument("--t-grid", dest="t_grid",
                     help="comma-separated deviation thresholds")
    sub.add_argument("--seed", type=int, help="master RNG seed (required for "
                     "anything randomized)")
    sub.add_argument("--threads", type=int, help="worker processes")
    sub.add_argument("--format", choices=("csv", "json"),
                     help="results file format")
    sub.add_argument("--out", help="output file path")
    sub.add_argument("--mode", choices=("uniform-j", "fixed-j"),
                     help="draw j uniformly, or reuse one fixed j")
    sub.add_argument("--fixed-j", dest="fixed_j", type=int,
                     help="the j used by --mode fixed-j (default N//2)")
    sub.add_argument("--inner-generator-file", dest="inner_generator_file",
                     help="file with the inner generator matrix, one 0/1 "
                     "row per line")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="robustgray",
        description="Robust Gray code: encode, decode, validate parameters, "
                    "and measure decoding deviation tails on a binary "
                    "symmetric channel.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("validate", help="check parameter constraints")
    _add_common_options(sub)
    sub.set_defaults(func=_cmd_validate)

    sub = subs.add_parser("encode", help="print the codeword for an index")
    sub.add_argument("j", type=int)
    _add_common_options(sub)
    sub.set_defaults(func=_cmd_encode)

    sub = subs.add_parser("decode", help="decode a 0/1 word of length d")
    sub.add_argument("word")
    _add_common_options(sub)
    sub.set_defaults(func=_cmd_decode)

    sub = subs.add_parser("simulate", help="run the Monte Carlo harness")
    _add_common_options(sub)
    sub.set_defaults(func=_cmd_simulate)

    sub = subs.add_parser("preset", help="derive a parameter set from a "
                          "target rate slack epsilon")
    sub.add_argument("--epsilon", type=float, help="rate slack target")
    _add_common_options(sub)
    sub.set_defaults(func=_cmd_preset)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
