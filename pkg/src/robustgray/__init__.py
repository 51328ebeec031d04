"""Robust Gray code library: a Gray code whose noisy encodings decode to a
nearby index with high probability on a binary symmetric channel.

Built from an outer Reed-Solomon code over GF(2^m) concatenated with a
small binary inner code, ordered along a reflected-code walk, with parity
buffers and a repetition-coded row header enabling noisy decoding.
"""

from .brc import brc_decode, brc_encode, flip_count, flip_index
from .channel import (ExperimentResult, TrialRecord, bsc_sample,
                      run_experiment, run_single_trial, wilson_interval)
from .concat import BaseCodebook, bits_to_symbols, symbols_to_bits
from .gf2m import GF2m
from .gray import ChunkView, CodeParams, GrayCodebook
from .rs import DecodeFailure, ReedSolomonCode
from .small_codes import (InnerCode, RepetitionCode, estimate_pfail, majority,
                          unary_decode, unary_encode)

__all__ = [
    "BaseCodebook",
    "ChunkView",
    "CodeParams",
    "DecodeFailure",
    "ExperimentResult",
    "GF2m",
    "GrayCodebook",
    "InnerCode",
    "ReedSolomonCode",
    "RepetitionCode",
    "TrialRecord",
    "bits_to_symbols",
    "brc_decode",
    "brc_encode",
    "bsc_sample",
    "estimate_pfail",
    "flip_count",
    "flip_index",
    "majority",
    "run_experiment",
    "run_single_trial",
    "symbols_to_bits",
    "unary_decode",
    "unary_encode",
    "wilson_interval",
]

__version__ = "0.1.0"
