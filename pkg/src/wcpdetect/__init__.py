"""Detect weak conjunctive predicates in distributed computation traces."""

from .errors import InvariantError, ModelError, OracleTooLarge, TraceFormatError
from .jlsdetect import jls_detect, jls_pipeline
from .metrics import DetectResult, Metrics
from .model import (
    Computation,
    Cut,
    FilteredComputation,
    LocalState,
    concurrent,
    filter_computation,
    happened_before_fast,
    happened_before_full,
    is_consistent_cut,
)
from .optdetect import opt_detect, seq_detect
from .oracle import brute_min_cut, enumerate_consistent_cuts, rejection_closure
from .traceio import GenParams, generate, parse, serialize, validate

__all__ = [
    "Computation", "Cut", "DetectResult", "FilteredComputation", "GenParams",
    "InvariantError", "LocalState", "Metrics", "ModelError", "OracleTooLarge",
    "TraceFormatError", "brute_min_cut", "concurrent", "enumerate_consistent_cuts",
    "filter_computation", "generate", "happened_before_fast", "happened_before_full",
    "is_consistent_cut", "jls_detect", "jls_pipeline", "opt_detect", "parse",
    "rejection_closure", "seq_detect", "serialize", "validate",
]
