"""Lossless dictionary codecs and their estimator-style wrappers."""
from __future__ import annotations

from sklearn.base import BaseEstimator

from ..core import Algorithm, Container, SymbolSeq, bit_width
from ..dictionary import LruParams, RecencyMode
from ..exceptions import DecodeError
from ._base import ParseResult, Phrase
from .lz77 import longest_window_match, lz77w_decode, lz77w_encode
from .lz78 import lz78_decode, lz78_encode, lz78lru_decode, lz78lru_encode
from .lzw import lzw_decode, lzw_encode, lzwlru_decode, lzwlru_encode

__all__ = [
    "Phrase", "ParseResult", "encode", "decode", "codeword_bits",
    "lz78_encode", "lz78_decode", "lz78lru_encode", "lz78lru_decode",
    "lzw_encode", "lzw_decode", "lzwlru_encode", "lzwlru_decode",
    "lz77w_encode", "lz77w_decode", "longest_window_match",
    "LZ78Codec", "LZ78LRUCodec", "LZWCodec", "LZWLRUCodec", "LZ77WCodec",
    "CODECS",
]

_DECODERS = {
    Algorithm.LZ78: lz78_decode,
    Algorithm.LZ78_LRU: lz78lru_decode,
    Algorithm.LZW: lzw_decode,
    Algorithm.LZW_LRU: lzwlru_decode,
    Algorithm.LZ77W: lz77w_decode,
}


def decode(container: Container) -> SymbolSeq:
    """Decode any lossless container by dispatching on its algorithm id."""
    try:
        return _DECODERS[container.algorithm](container)
    except KeyError:
        raise DecodeError(f"no lossless decoder for {container.algorithm.name}") from None


def codeword_bits(parse: ParseResult) -> int:
    """Payload size implied by the per-codeword widths of ``parse``."""
    A = parse.alphabet_size
    bps = bit_width(A)
    algo = parse.algorithm
    p = parse.params
    cws = parse.codewords
    ext_bits = bps * sum(1 for cw in cws if cw[-1] is not None)
    if algo is Algorithm.LZ78:
        return sum(bit_width(k) for k in range(1, len(cws) + 1)) + ext_bits
    if algo is Algorithm.LZ78_LRU:
        return len(cws) * bit_width(p["D"] + 1) + ext_bits
    if algo is Algorithm.LZW:
        return sum(bit_width(A + max(j - 1, 0) + 1) for j in range(len(cws)))
    if algo is Algorithm.LZW_LRU:
        return len(cws) * bit_width(A + p["D"] + 1)
    if algo is Algorithm.LZ77W:
        per = bit_width(p["window"] + 1) + bit_width(p["L_max"] + 1)
        return len(cws) * per + ext_bits
    if algo is Algorithm.FSDL:
        ext_bits = p["L"] * bps * sum(1 for cw in cws if cw[-1] is not None)
        tail = parse.params.get("tail", 0)
        return len(cws) * bit_width(p["D"] + 1) + ext_bits + tail * bps
    raise ValueError(f"unknown algorithm {algo}")


class _Codec(BaseEstimator):
    """Shared estimator surface: ``fit`` encodes and keeps the artefacts."""

    algorithm: Algorithm

    def fit(self, X, y=None):
        self.container_, self.parse_ = self.encode_with_parse(X)
        return self

    def encode(self, X) -> Container:
        return self.encode_with_parse(X)[0]

    def decode(self, container: Container) -> SymbolSeq:
        return _DECODERS[self.algorithm](container)


class LZ78Codec(_Codec):
    algorithm = Algorithm.LZ78

    def __init__(self, alphabet=None):
        self.alphabet = alphabet

    def encode_with_parse(self, X):
        return lz78_encode(X, self.alphabet)


class LZWCodec(_Codec):
    algorithm = Algorithm.LZW

    def __init__(self, alphabet=None):
        self.alphabet = alphabet

    def encode_with_parse(self, X):
        return lzw_encode(X, self.alphabet)


class _LruCodec(_Codec):
    def __init__(self, D=256, L_max=None, recency=RecencyMode.TOUCH_ON_MATCH,
                 alphabet=None):
        self.D = D
        self.L_max = L_max
        self.recency = recency
        self.alphabet = alphabet

    @property
    def lru_params(self) -> LruParams:
        return LruParams(self.D, self.L_max, self.recency)


class LZ78LRUCodec(_LruCodec):
    algorithm = Algorithm.LZ78_LRU

    def encode_with_parse(self, X):
        return lz78lru_encode(X, self.lru_params, self.alphabet)


class LZWLRUCodec(_LruCodec):
    algorithm = Algorithm.LZW_LRU

    def encode_with_parse(self, X):
        return lzwlru_encode(X, self.lru_params, self.alphabet)


class LZ77WCodec(_LruCodec):
    algorithm = Algorithm.LZ77W

    def encode_with_parse(self, X):
        return lz77w_encode(X, self.lru_params, self.alphabet)


CODECS = {
    "lz78": LZ78Codec,
    "lz78lru": LZ78LRUCodec,
    "lzw": LZWCodec,
    "lzwlru": LZWLRUCodec,
    "lz77w": LZ77WCodec,
}


def encode(x, algo: str, **params) -> tuple[Container, ParseResult]:
    """Encode with a codec named as in ``CODECS``; returns container and parse."""
    try:
        cls = CODECS[algo]
    except KeyError:
        raise ValueError(f"unknown lossless codec {algo!r}") from None
    return cls(**params).encode_with_parse(x)
