"""File ingestion and emission of symbol sequences."""
from __future__ import annotations

from pathlib import Path

import numpy as np

from ..core import Alphabet, SymbolSeq


def bytes_to_symbols(raw: bytes, bits: bool = False, alphabet_size: int | None = None) -> SymbolSeq:
    """Bytes as symbols: one per byte (A=256 or ``alphabet_size``) or MSB-first bits."""
    if bits:
        data = np.unpackbits(np.frombuffer(raw, dtype=np.uint8)).tolist()
        return SymbolSeq(Alphabet.binary(), tuple(data))
    A = 256 if alphabet_size is None else alphabet_size
    if not 2 <= A <= 256:
        raise ValueError("byte-per-symbol files need 2 <= alphabet size <= 256")
    if raw and max(raw) >= A:
        raise ValueError(f"byte value {max(raw)} outside alphabet of size {A}")
    return SymbolSeq(Alphabet.of_size(A), tuple(raw))


def symbols_to_bytes(seq: SymbolSeq, bits: bool = False) -> bytes:
    if bits:
        if seq.alphabet.size != 2:
            raise ValueError("--bits output needs a binary alphabet")
        if len(seq) % 8:
            raise ValueError(f"{len(seq)} bits is not a whole number of bytes")
        return np.packbits(np.array(seq.data, dtype=np.uint8)).tobytes()
    if seq.alphabet.size > 256:
        raise ValueError("alphabet too large for one byte per symbol")
    return bytes(seq.data)


def read_symbols(path: Path, bits: bool = False, alphabet_size: int | None = None) -> SymbolSeq:
    return bytes_to_symbols(Path(path).read_bytes(), bits, alphabet_size)
