"""LZ78 with an unbounded dictionary and LZ78(LRU) with a D-entry dictionary.

LZ78 codeword for phrase k (1-based): ``ceil(log2 k)`` bits of match index
(0 = empty prefix) then ``ceil(log2 A)`` bits of extension symbol.

LZ78(LRU) codeword: ``ceil(log2 (D+1))`` bits of slot (0 = no match) then
the extension symbol. A phrase of length ``L_max + 1`` leaves the dictionary
untouched, recency included.

In both, a final phrase that ends exactly on a dictionary match carries no
extension symbol; the decoder detects this from the original length.
"""
from __future__ import annotations

from typing import Callable, Hashable, Sequence

from .._validation import check_sequence
from ..core import (
    Algorithm,
    Alphabet,
    BitReader,
    BitWriter,
    Container,
    SymbolSeq,
    bit_width,
)
from ..dictionary import LruParams, PhraseDictionary, RecencyMode
from ..exceptions import DecodeError
from ._base import ParseResult, Phrase


def lz78_parse(data: Sequence[Hashable]) -> tuple[list, list]:
    """Incremental parsing; returns ``(phrases, codewords)``."""
    children: list[dict] = [{}]
    phrases = []
    codewords = []
    n = len(data)
    pos = 0
    while pos < n:
        node = 0
        i = pos
        while i < n:
            nxt = children[node].get(data[i])
            if nxt is None:
                break
            node = nxt
            i += 1
        if i == n:
            codewords.append((node, None))
            phrases.append(Phrase(tuple(data[pos:n]), pos))
            break
        sym = data[i]
        children[node][sym] = len(children)
        children.append({})
        codewords.append((node, sym))
        phrases.append(Phrase(tuple(data[pos:i + 1]), pos))
        pos = i + 1
    return phrases, codewords


def lz78_encode(x, alphabet=None) -> tuple[Container, ParseResult]:
    seq = check_sequence(x, alphabet)
    A = seq.alphabet.size
    bps = seq.alphabet.bits_per_symbol
    phrases, codewords = lz78_parse(seq.data)
    w = BitWriter()
    for k, (index, sym) in enumerate(codewords, start=1):
        w.write(index, bit_width(k))
        if sym is not None:
            w.write(sym, bps)
    container = Container(Algorithm.LZ78, A, len(seq), {}, w.getvalue())
    parse = ParseResult(Algorithm.LZ78, A, tuple(phrases), tuple(codewords))
    return container, parse


def lz78_decode(c: Container) -> SymbolSeq:
    if c.algorithm is not Algorithm.LZ78:
        raise DecodeError(f"expected LZ78 container, got {c.algorithm.name}")
    alphabet = Alphabet.of_size(c.alphabet_size)
    A = c.alphabet_size
    bps = alphabet.bits_per_symbol
    n = c.original_length
    r = BitReader(c.payload)
    entries: list[tuple] = [()]
    out: list[int] = []
    k = 1
    while len(out) < n:
        index = r.read(bit_width(k))
        if index >= k:
            raise DecodeError(f"phrase {k}: index {index} exceeds dictionary size {k}")
        prefix = entries[index]
        remaining = n - len(out)
        if index and len(prefix) == remaining:
            out.extend(prefix)
            break
        if len(prefix) > remaining:
            raise DecodeError(f"phrase {k} overruns original length")
        sym = r.read(bps)
        if sym >= A:
            raise DecodeError(f"phrase {k}: symbol {sym} outside alphabet")
        phrase = prefix + (sym,)
        entries.append(phrase)
        out.extend(phrase)
        k += 1
    r.expect_end()
    return SymbolSeq(alphabet, tuple(out))


def lru_parse(data: Sequence[Hashable], p: LruParams) -> tuple[list, list, PhraseDictionary]:
    """LZ78(LRU) parsing over arbitrary hashable symbols."""
    d = PhraseDictionary(p.D, p.L_max)
    touch = p.recency is RecencyMode.TOUCH_ON_MATCH
    L_max = p.L_max
    phrases = []
    codewords = []
    n = len(data)
    pos = 0
    while pos < n:
        slot, m = d.longest_match(data, pos)
        end = pos + m
        if end == n:
            codewords.append((slot, None))
            phrases.append(Phrase(tuple(data[pos:n]), pos))
            break
        sym = data[end]
        phrase = tuple(data[pos:end + 1])
        if m + 1 <= L_max:
            if touch and m:
                d.touch(slot)
            d.insert(phrase)
        codewords.append((slot, sym))
        phrases.append(Phrase(phrase, pos))
        pos = end + 1
    return phrases, codewords, d


def lru_write(w: BitWriter, codewords, D: int,
              write_symbol: Callable[[BitWriter, Hashable], None]) -> None:
    slot_width = bit_width(D + 1)
    for slot, sym in codewords:
        w.write(slot, slot_width)
        if sym is not None:
            write_symbol(w, sym)


def lru_read(r: BitReader, n: int, p: LruParams,
             read_symbol: Callable[[BitReader], Hashable]) -> list:
    """Mirror of ``lru_parse``: rebuilds the encoder's dictionary step by step."""
    d = PhraseDictionary(p.D, p.L_max)
    touch = p.recency is RecencyMode.TOUCH_ON_MATCH
    slot_width = bit_width(p.D + 1)
    out: list = []
    while len(out) < n:
        slot = r.read(slot_width)
        if slot == 0:
            prefix = ()
        elif slot <= p.D and d.is_active(slot):
            prefix = d.phrase(slot)
        else:
            raise DecodeError(f"slot {slot} refers to an inactive entry")
        remaining = n - len(out)
        if prefix and len(prefix) == remaining:
            out.extend(prefix)
            break
        if len(prefix) > remaining:
            raise DecodeError("phrase overruns original length")
        phrase = prefix + (read_symbol(r),)
        if len(phrase) <= p.L_max:
            if touch and prefix:
                d.touch(slot)
            try:
                d.insert(phrase)
            except ValueError:
                # the encoder would have matched it: only corruption gets here
                raise DecodeError("stream re-inserts an active phrase") from None
        out.extend(phrase)
    return out


def _symbol_io(alphabet: Alphabet):
    bps = alphabet.bits_per_symbol
    A = alphabet.size

    def write_symbol(w, sym):
        w.write(sym, bps)

    def read_symbol(r):
        sym = r.read(bps)
        if sym >= A:
            raise DecodeError(f"symbol {sym} outside alphabet")
        return sym

    return write_symbol, read_symbol


def _lru_container_params(p: LruParams) -> dict:
    return {"D": p.D, "L_max": p.L_max, "recency": int(p.recency)}


def lz78lru_encode(x, p: LruParams, alphabet=None) -> tuple[Container, ParseResult]:
    seq = check_sequence(x, alphabet)
    if p.D < 1:
        raise ValueError("LZ78(LRU) needs D >= 1")
    phrases, codewords, _ = lru_parse(seq.data, p)
    write_symbol, _ = _symbol_io(seq.alphabet)
    w = BitWriter()
    lru_write(w, codewords, p.D, write_symbol)
    params = _lru_container_params(p)
    container = Container(Algorithm.LZ78_LRU, seq.alphabet.size, len(seq), params,
                          w.getvalue())
    parse = ParseResult(Algorithm.LZ78_LRU, seq.alphabet.size, tuple(phrases),
                        tuple(codewords), params)
    return container, parse


def lz78lru_decode(c: Container) -> SymbolSeq:
    if c.algorithm is not Algorithm.LZ78_LRU:
        raise DecodeError(f"expected LZ78_LRU container, got {c.algorithm.name}")
    alphabet = Alphabet.of_size(c.alphabet_size)
    p = LruParams.from_params(c.params)
    _, read_symbol = _symbol_io(alphabet)
    r = BitReader(c.payload)
    out = lru_read(r, c.original_length, p, read_symbol)
    r.expect_end()
    return SymbolSeq(alphabet, tuple(out))
