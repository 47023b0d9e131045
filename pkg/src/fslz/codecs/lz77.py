"""Sliding-window LZ77 with window ``D * L_max`` and match length <= ``L_max``.

Codeword: offset in ``ceil(log2(W + 1))`` bits (0 = no match), length in
``ceil(log2(L_max + 1))`` bits, then the extension symbol unless the match
runs to the end of the input. Matches may overlap the lookahead. Among
longest matches the smallest offset wins.
"""
from __future__ import annotations

from .._validation import check_sequence
from ..core import Algorithm, Alphabet, BitReader, BitWriter, Container, SymbolSeq, bit_width
from ..dictionary import LruParams
from ..exceptions import DecodeError
from ._base import ParseResult, Phrase

_MAX_CODEPOINT = 0x110000


def longest_window_match(text: str, pos: int, window: int, max_len: int) -> tuple[int, int]:
    """``(offset, length)`` of the longest match for ``text[pos:]`` in the window.

    ``text`` holds one character per symbol so ``str.rfind`` does the scanning;
    the end bound ``pos - 1 + length`` admits sources that overlap ``pos``.
    """
    start = max(0, pos - window)
    limit = min(max_len, len(text) - pos)
    best_len = 0
    best_src = -1
    length = 1
    while length <= limit:
        src = text.rfind(text[pos:pos + length], start, pos - 1 + length)
        if src < 0:
            break
        best_len = length
        best_src = src
        length += 1
    if best_len == 0:
        return 0, 0
    return pos - best_src, best_len


def lz77w_encode(x, p: LruParams, alphabet=None) -> tuple[Container, ParseResult]:
    seq = check_sequence(x, alphabet)
    A = seq.alphabet.size
    if A > _MAX_CODEPOINT:
        raise ValueError("LZ77W supports alphabets of at most 0x110000 symbols")
    if p.D < 1:
        raise ValueError("LZ77W needs D >= 1")
    data = seq.data
    n = len(data)
    window = p.D * p.L_max
    off_width = bit_width(window + 1)
    len_width = bit_width(p.L_max + 1)
    bps = seq.alphabet.bits_per_symbol
    text = "".join(map(chr, data))
    w = BitWriter()
    phrases = []
    codewords = []
    pos = 0
    while pos < n:
        offset, length = longest_window_match(text, pos, window, p.L_max)
        end = pos + length
        w.write(offset, off_width)
        w.write(length, len_width)
        if end == n:
            codewords.append((offset, length, None))
            phrases.append(Phrase(tuple(data[pos:n]), pos))
            break
        sym = data[end]
        w.write(sym, bps)
        codewords.append((offset, length, sym))
        phrases.append(Phrase(tuple(data[pos:end + 1]), pos))
        pos = end + 1
    params = {"D": p.D, "L_max": p.L_max, "window": window}
    container = Container(Algorithm.LZ77W, A, n, params, w.getvalue())
    parse = ParseResult(Algorithm.LZ77W, A, tuple(phrases), tuple(codewords), params)
    return container, parse


def lz77w_decode(c: Container) -> SymbolSeq:
    if c.algorithm is not Algorithm.LZ77W:
        raise DecodeError(f"expected LZ77W container, got {c.algorithm.name}")
    A = c.alphabet_size
    n = c.original_length
    L_max = c.params["L_max"]
    window = c.params["window"]
    off_width = bit_width(window + 1)
    len_width = bit_width(L_max + 1)
    bps = bit_width(A)
    r = BitReader(c.payload)
    out: list[int] = []
    while len(out) < n:
        offset = r.read(off_width)
        length = r.read(len_width)
        produced = len(out)
        if offset == 0:
            if length:
                raise DecodeError("nonzero length without a match offset")
        else:
            if offset > produced or offset > window:
                raise DecodeError(f"offset {offset} exceeds current position {produced}")
            if not 1 <= length <= L_max:
                raise DecodeError(f"match length {length} out of range")
            if produced + length > n:
                raise DecodeError("match overruns original length")
            src = produced - offset
            if offset >= length:
                out.extend(out[src:src + length])
            else:
                for i in range(length):
                    out.append(out[src + i])
        if len(out) == n:
            break
        sym = r.read(bps)
        if sym >= A:
            raise DecodeError(f"symbol {sym} outside alphabet")
        out.append(sym)
    r.expect_end()
    return SymbolSeq(Alphabet.of_size(A), tuple(out))
