"""Synthetic sources, file I/O, parameter sweeps and the command line."""
from .io import bytes_to_symbols, read_symbols, symbols_to_bytes
from .sources import (
    SourceKind,
    SourceSpec,
    binary_entropy,
    entropy_rate,
    generate,
    parse_source,
    shannon_entropy,
    stationary_distribution,
)
from .sweep import SweepSpec, run_sweep, write_rows

__all__ = [
    "bytes_to_symbols", "read_symbols", "symbols_to_bytes",
    "SourceKind", "SourceSpec", "binary_entropy", "entropy_rate", "generate",
    "parse_source", "shannon_entropy", "stationary_distribution",
    "SweepSpec", "run_sweep", "write_rows",
]
