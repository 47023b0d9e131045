"""Constrained-dictionary Lempel-Ziv codecs, compressibility bounds and a
distortion-limited block quantizer pipeline."""
from .bounds import (
    BoundParams,
    CompressionReport,
    PhraseStats,
    build_report,
    lemma1_bound,
    lz78_lower_estimate,
    phrase_stats,
)
from .codecs import (
    LZ77WCodec,
    LZ78Codec,
    LZ78LRUCodec,
    LZWCodec,
    LZWLRUCodec,
    ParseResult,
    Phrase,
    decode,
    encode,
)
from .core import (
    Algorithm,
    Alphabet,
    BitStream,
    Container,
    SymbolSeq,
    pack_symbols,
    read_container,
    unpack_symbols,
    write_container,
)
from .dictionary import LruParams, PhraseDictionary, RecencyMode
from .exceptions import (
    BadMagicError,
    ContainerError,
    DecodeError,
    FSLZError,
    TruncatedPayloadError,
    UnsupportedVersionError,
)
from .lossy import FSDLCodec, GreedyQuantizer, QuantizerConfig, fsdl_decode, fsdl_encode

__version__ = "0.1.0"

__all__ = [
    "Algorithm",
    "Alphabet",
    "BadMagicError",
    "BitStream",
    "BoundParams",
    "build_report",
    "CompressionReport",
    "Container",
    "ContainerError",
    "decode",
    "DecodeError",
    "encode",
    "fsdl_decode",
    "fsdl_encode",
    "FSDLCodec",
    "FSLZError",
    "GreedyQuantizer",
    "lemma1_bound",
    "LruParams",
    "LZ77WCodec",
    "lz78_lower_estimate",
    "LZ78Codec",
    "LZ78LRUCodec",
    "LZWCodec",
    "LZWLRUCodec",
    "pack_symbols",
    "ParseResult",
    "Phrase",
    "phrase_stats",
    "PhraseDictionary",
    "PhraseStats",
    "QuantizerConfig",
    "read_container",
    "RecencyMode",
    "SymbolSeq",
    "TruncatedPayloadError",
    "unpack_symbols",
    "UnsupportedVersionError",
    "write_container",
]
