"""Alphabets, symbol sequences, bit-level I/O and the FSLZ container format.

Container layout (all integers unsigned big-endian)::

    magic[4] = b"FSLZ"
    version            u8   (= 1)
    algorithm_id       u8
    alphabet_size      u32
    original_length    u64
    param_count        u8
    param_count x (tag u8, value u64)
    payload_bit_length u64
    payload            ceil(payload_bit_length / 8) bytes, zero padded
"""
from __future__ import annotations

import enum
import struct
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .exceptions import (
    BadMagicError,
    ContainerError,
    DecodeError,
    PayloadExhaustedError,
    TruncatedPayloadError,
    UnsupportedVersionError,
)

MAGIC = b"FSLZ"
VERSION = 1
U64_MAX = (1 << 64) - 1


def bit_width(count: int) -> int:
    """Bits needed to write any integer in ``range(count)``; 0 when count <= 1."""
    if count <= 1:
        return 0
    return (count - 1).bit_length()


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered set of atoms, mapped bijectively onto ``0..size-1``."""

    symbols: tuple
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        index = {s: i for i, s in enumerate(symbols)}
        if len(index) != len(symbols):
            raise ValueError("alphabet symbols must be distinct")
        if len(symbols) < 2:
            raise ValueError("alphabet needs at least 2 symbols")
        object.__setattr__(self, "_index", index)

    @classmethod
    def of_size(cls, size: int) -> "Alphabet":
        return cls(tuple(range(size)))

    @classmethod
    def binary(cls) -> "Alphabet":
        return cls((0, 1))

    @classmethod
    def bytes(cls) -> "Alphabet":
        return cls(tuple(range(256)))

    @property
    def size(self) -> int:
        return len(self.symbols)

    @property
    def bits_per_symbol(self) -> int:
        return bit_width(self.size)

    def index(self, atom) -> int:
        return self._index[atom]

    def encode(self, atoms: Iterable) -> "SymbolSeq":
        index = self._index
        try:
            data = tuple(index[a] for a in atoms)
        except KeyError as exc:
            raise ValueError(f"atom {exc.args[0]!r} not in alphabet") from None
        return SymbolSeq(self, data)

    def decode(self, seq: Iterable[int]) -> list:
        symbols = self.symbols
        return [symbols[i] for i in seq]


@dataclass(frozen=True)
class SymbolSeq:
    """A sequence of symbol indices typed against an alphabet."""

    alphabet: Alphabet
    data: tuple

    def __post_init__(self):
        data = tuple(map(int, self.data))
        object.__setattr__(self, "data", data)
        if data and (min(data) < 0 or max(data) >= self.alphabet.size):
            raise ValueError("symbol index out of range for alphabet")

    def __len__(self):
        return len(self.data)

    def __iter__(self):
        return iter(self.data)

    def __getitem__(self, item):
        return self.data[item]


@dataclass(frozen=True)
class BitStream:
    """Bytes plus an exact bit length; padding bits in the last byte are zero."""

    data: bytes
    bit_length: int

    def __post_init__(self):
        object.__setattr__(self, "data", bytes(self.data))
        if self.bit_length < 0 or len(self.data) != (self.bit_length + 7) // 8:
            raise ValueError("bit_length does not match byte length")
        pad = -self.bit_length % 8
        if pad and self.data[-1] & ((1 << pad) - 1):
            raise ValueError("padding bits must be zero")

    @classmethod
    def empty(cls) -> "BitStream":
        return cls(b"", 0)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitStream":
        w = BitWriter()
        for b in bits:
            w.write(b, 1)
        return w.getvalue()

    def to_bits(self) -> list[int]:
        r = BitReader(self)
        return [r.read(1) for _ in range(self.bit_length)]


class BitWriter:
    """Accumulates MSB-first fixed-width integers."""

    def __init__(self):
        self._out = bytearray()
        self._acc = 0
        self._nacc = 0
        self.bit_length = 0

    def write(self, value: int, width: int) -> None:
        if width == 0:
            return
        if value < 0 or value >> width:
            raise ValueError(f"value {value} does not fit in {width} bits")
        acc = (self._acc << width) | value
        nacc = self._nacc + width
        self.bit_length += width
        if nacc >= 8:
            nbytes = nacc >> 3
            nacc -= nbytes << 3
            self._out += (acc >> nacc).to_bytes(nbytes, "big")
            acc &= (1 << nacc) - 1
        self._acc = acc
        self._nacc = nacc

    def getvalue(self) -> BitStream:
        data = bytes(self._out)
        if self._nacc:
            data += bytes([self._acc << (8 - self._nacc)])
        return BitStream(data, self.bit_length)


class BitReader:
    """Reads MSB-first fixed-width integers; never reads past ``bit_length``."""

    def __init__(self, stream: BitStream):
        self._data = stream.data
        self._limit = stream.bit_length
        self.pos = 0

    @property
    def remaining(self) -> int:
        return self._limit - self.pos

    def read(self, width: int) -> int:
        if width == 0:
            return 0
        pos = self.pos
        end = pos + width
        if end > self._limit:
            raise PayloadExhaustedError(
                f"payload exhausted: need {width} bits at offset {pos}, "
                f"{self._limit - pos} left")
        start_byte = pos >> 3
        stop_byte = (end + 7) >> 3
        chunk = int.from_bytes(self._data[start_byte:stop_byte], "big")
        self.pos = end
        return (chunk >> ((stop_byte << 3) - end)) & ((1 << width) - 1)

    def expect_end(self) -> None:
        if self.pos != self._limit:
            raise DecodeError(f"{self._limit - self.pos} trailing payload bits")


def pack_symbols(seq: SymbolSeq) -> BitStream:
    """Fixed-width ``ceil(log2 A)`` bits per symbol, MSB first."""
    width = seq.alphabet.bits_per_symbol
    w = BitWriter()
    for s in seq.data:
        w.write(s, width)
    return w.getvalue()


def unpack_symbols(bits: BitStream, alphabet: Alphabet, n: int) -> SymbolSeq:
    width = alphabet.bits_per_symbol
    if bits.bit_length != n * width:
        raise ValueError(
            f"bit_length {bits.bit_length} != {n} symbols x {width} bits")
    r = BitReader(bits)
    data = [r.read(width) for _ in range(n)]
    if any(s >= alphabet.size for s in data):
        raise DecodeError("packed symbol out of alphabet range")
    return SymbolSeq(alphabet, tuple(data))


class Algorithm(enum.IntEnum):
    LZ78 = 1
    LZ78_LRU = 2
    LZW = 3
    LZW_LRU = 4
    LZ77W = 5
    FSDL = 6


PARAM_TAGS = {
    "D": 1,
    "L_max": 2,
    "L": 3,
    "d_max_num": 4,
    "d_max_den": 5,
    "window": 6,
    "recency": 7,
}
TAG_NAMES = {v: k for k, v in PARAM_TAGS.items()}

_LRU = frozenset({"D", "L_max", "recency"})
# (required, optional) parameter names per algorithm
ALGORITHM_PARAMS: dict[Algorithm, tuple[frozenset, frozenset]] = {
    Algorithm.LZ78: (frozenset(), frozenset()),
    Algorithm.LZW: (frozenset(), frozenset()),
    Algorithm.LZ78_LRU: (_LRU, frozenset()),
    Algorithm.LZW_LRU: (_LRU, frozenset()),
    Algorithm.LZ77W: (frozenset({"D", "L_max", "window"}), frozenset()),
    Algorithm.FSDL: (_LRU | {"L", "d_max_num", "d_max_den"}, frozenset({"window"})),
}

_HEADER = struct.Struct(">4sBBIQB")
_PARAM = struct.Struct(">BQ")
_BITLEN = struct.Struct(">Q")


@dataclass(frozen=True)
class Container:
    algorithm: Algorithm
    alphabet_size: int
    original_length: int
    params: Mapping[str, int] = field(default_factory=dict)
    payload: BitStream = field(default_factory=BitStream.empty)
    version: int = VERSION

    def __post_init__(self):
        object.__setattr__(self, "algorithm", Algorithm(self.algorithm))
        object.__setattr__(self, "params", dict(self.params))

    def validate(self) -> None:
        """Raise ContainerError if fields or the parameter block are invalid."""
        if self.version != VERSION:
            raise UnsupportedVersionError(self.version)
        if not 2 <= self.alphabet_size < (1 << 32):
            raise ContainerError(f"alphabet_size {self.alphabet_size} out of range")
        if not 0 <= self.original_length <= U64_MAX:
            raise ContainerError("original_length out of range")
        required, optional = ALGORITHM_PARAMS[self.algorithm]
        names = set(self.params)
        unknown = names - set(PARAM_TAGS)
        if unknown:
            raise ContainerError(f"unknown parameters {sorted(unknown)}")
        if not required <= names:
            raise ContainerError(
                f"{self.algorithm.name} requires parameters {sorted(required - names)}")
        if names - required - optional:
            raise ContainerError(
                f"parameters {sorted(names - required - optional)} not allowed "
                f"for {self.algorithm.name}")
        p = self.params
        for name, value in p.items():
            if not 0 <= value <= U64_MAX:
                raise ContainerError(f"parameter {name}={value} out of range")
        min_d = 0 if self.algorithm is Algorithm.LZW_LRU else 1
        if "D" in p and p["D"] < min_d:
            raise ContainerError(f"D={p['D']} below minimum {min_d}")
        for name in ("L_max", "L", "d_max_den"):
            if name in p and p[name] < 1:
                raise ContainerError(f"{name} must be >= 1")
        if "recency" in p and p["recency"] not in (0, 1):
            raise ContainerError("recency must be 0 or 1")
        if self.algorithm is Algorithm.LZ77W and p["window"] != p["D"] * p["L_max"]:
            raise ContainerError("LZ77W window must equal D * L_max")


def write_container(container: Container) -> bytes:
    container.validate()
    params = sorted((PARAM_TAGS[k], v) for k, v in container.params.items())
    parts = [_HEADER.pack(MAGIC, container.version, int(container.algorithm),
                          container.alphabet_size, container.original_length,
                          len(params))]
    parts.extend(_PARAM.pack(tag, value) for tag, value in params)
    parts.append(_BITLEN.pack(container.payload.bit_length))
    parts.append(container.payload.data)
    return b"".join(parts)


def read_container(data: bytes) -> Container:
    data = bytes(data)
    if data[:4] != MAGIC:
        raise BadMagicError(data[:4])
    if len(data) < _HEADER.size:
        raise ContainerError("truncated header")
    _, version, algo_id, alphabet_size, original_length, nparams = \
        _HEADER.unpack_from(data, 0)
    if version != VERSION:
        raise UnsupportedVersionError(version)
    try:
        algorithm = Algorithm(algo_id)
    except ValueError:
        raise ContainerError(f"unknown algorithm id {algo_id}") from None
    offset = _HEADER.size
    if len(data) < offset + nparams * _PARAM.size + _BITLEN.size:
        raise ContainerError("truncated header")
    params = {}
    for _ in range(nparams):
        tag, value = _PARAM.unpack_from(data, offset)
        offset += _PARAM.size
        if tag not in TAG_NAMES:
            raise ContainerError(f"unknown parameter tag {tag}")
        name = TAG_NAMES[tag]
        if name in params:
            raise ContainerError(f"duplicate parameter tag {tag}")
        params[name] = value
    (bit_length,) = _BITLEN.unpack_from(data, offset)
    offset += _BITLEN.size
    nbytes = (bit_length + 7) // 8
    body = data[offset:]
    if len(body) < nbytes:
        raise TruncatedPayloadError(nbytes, len(body))
    if len(body) > nbytes:
        raise ContainerError(f"{len(body) - nbytes} trailing bytes after payload")
    try:
        payload = BitStream(body, bit_length)
    except ValueError as exc:
        raise ContainerError(str(exc)) from None
    container = Container(algorithm, alphabet_size, original_length, params,
                          payload, version)
    container.validate()
    return container


def container_size(container: Container) -> int:
    return (_HEADER.size + len(container.params) * _PARAM.size + _BITLEN.size
            + (container.payload.bit_length + 7) // 8)

