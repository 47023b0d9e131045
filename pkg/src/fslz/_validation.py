"""Input validation helpers, in the spirit of ``sklearn.utils.validation``."""
from __future__ import annotations

import operator
from fractions import Fraction
from numbers import Integral

import numpy as np

from .core import Alphabet, SymbolSeq


def check_alphabet(alphabet) -> Alphabet:
    if isinstance(alphabet, Alphabet):
        return alphabet
    if isinstance(alphabet, Integral):
        return Alphabet.of_size(int(alphabet))
    raise TypeError(f"expected Alphabet or int, got {type(alphabet).__name__}")


def check_sequence(x, alphabet=None) -> SymbolSeq:
    """Coerce ``x`` to a SymbolSeq.

    Accepts a SymbolSeq, ``bytes``/``bytearray`` (byte alphabet unless one is
    given), a 1-d integer numpy array, or any sequence of integer indices.
    Without an explicit alphabet, integer sequences get ``max(2, max(x) + 1)``
    symbols.
    """
    if isinstance(x, SymbolSeq):
        if alphabet is not None and check_alphabet(alphabet) != x.alphabet:
            raise ValueError("sequence alphabet does not match requested alphabet")
        return x
    if isinstance(x, (bytes, bytearray, memoryview)):
        alpha = Alphabet.bytes() if alphabet is None else check_alphabet(alphabet)
        return SymbolSeq(alpha, tuple(bytes(x)))
    if isinstance(x, str):
        raise TypeError("strings are ambiguous; use Alphabet.encode(...)")
    if isinstance(x, np.ndarray):
        if x.ndim != 1 or not np.issubdtype(x.dtype, np.integer):
            raise ValueError("expected a 1-d integer array")
        data = tuple(x.tolist())
    else:
        try:
            data = tuple(map(operator.index, x))
        except TypeError:
            raise ValueError("sequence elements must be integers") from None
    if alphabet is None:
        alpha = Alphabet.of_size(max(2, max(data, default=0) + 1))
    else:
        alpha = check_alphabet(alphabet)
    return SymbolSeq(alpha, data)


def check_int(value, name: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_fraction(value, name: str) -> Fraction:
    """Exact non-negative rational from an int, Fraction, or ``"p/q"`` string."""
    if isinstance(value, float):
        raise TypeError(f"{name} must be exact (int, Fraction or 'p/q'), not float")
    try:
        frac = Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValueError(f"{name}: cannot parse {value!r} as a rational") from None
    if frac < 0:
        raise ValueError(f"{name} must be non-negative")
    return frac
