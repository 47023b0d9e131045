"""LZW and LZW(LRU).

Both seed the dictionary with the A single symbols at indices ``0..A-1``.
After each phrase the previous phrase extended by the first symbol of the
next one becomes a new entry, so a codeword may name the entry being built
in the same step.

Plain LZW writes codeword j (0-based) in ``ceil(log2(size + 1))`` bits where
``size = A + max(j - 1, 0)`` is the decoder's dictionary size at that point.
LZW(LRU) uses a fixed ``ceil(log2(A + D + 1))`` bits; its D evictable entries
take indices ``A .. A + D - 1`` and follow the same ``L_max`` rule as
LZ78(LRU): an entry of length ``L_max + 1`` is never stored.
"""
from __future__ import annotations

from .._validation import check_sequence
from ..core import Algorithm, Alphabet, BitReader, BitWriter, Container, SymbolSeq, bit_width
from ..dictionary import LruParams, PhraseDictionary, RecencyMode
from ..exceptions import DecodeError
from ._base import ParseResult, Phrase


def _width(A: int, j: int) -> int:
    return bit_width(A + max(j - 1, 0) + 1)


def lzw_encode(x, alphabet=None) -> tuple[Container, ParseResult]:
    seq = check_sequence(x, alphabet)
    data = seq.data
    A = seq.alphabet.size
    n = len(data)
    children: list[dict] = [{} for _ in range(A)]
    phrases = []
    codewords = []
    w = BitWriter()
    pos = 0
    while pos < n:
        node = data[pos]
        i = pos + 1
        while i < n:
            nxt = children[node].get(data[i])
            if nxt is None:
                break
            node = nxt
            i += 1
        w.write(node, _width(A, len(codewords)))
        codewords.append((node, None))
        phrases.append(Phrase(tuple(data[pos:i]), pos))
        if i < n:
            children[node][data[i]] = len(children)
            children.append({})
        pos = i
    container = Container(Algorithm.LZW, A, n, {}, w.getvalue())
    parse = ParseResult(Algorithm.LZW, A, tuple(phrases), tuple(codewords))
    return container, parse


def lzw_decode(c: Container) -> SymbolSeq:
    if c.algorithm is not Algorithm.LZW:
        raise DecodeError(f"expected LZW container, got {c.algorithm.name}")
    A = c.alphabet_size
    n = c.original_length
    r = BitReader(c.payload)
    entries = [(s,) for s in range(A)]
    out: list[int] = []
    prev = None
    j = 0
    while len(out) < n:
        index = r.read(_width(A, j))
        if prev is None:
            if index >= A:
                raise DecodeError(f"index {index}: self-reference with no previous phrase")
            cur = entries[index]
        else:
            if index < len(entries):
                cur = entries[index]
            elif index == len(entries):
                cur = prev + prev[:1]
            else:
                raise DecodeError(f"index {index} out of range ({len(entries)} entries)")
            entries.append(prev + cur[:1])
        if len(out) + len(cur) > n:
            raise DecodeError("phrase overruns original length")
        out.extend(cur)
        prev = cur
        j += 1
    r.expect_end()
    return SymbolSeq(Alphabet.of_size(A), tuple(out))


def _seeded_dictionary(A: int, p: LruParams) -> PhraseDictionary:
    d = PhraseDictionary(p.D, p.L_max, first_slot=A)
    for s in range(A):
        d.seed((s,), s)
    return d


def lzwlru_encode(x, p: LruParams, alphabet=None) -> tuple[Container, ParseResult]:
    seq = check_sequence(x, alphabet)
    data = seq.data
    A = seq.alphabet.size
    n = len(data)
    d = _seeded_dictionary(A, p)
    touch = p.recency is RecencyMode.TOUCH_ON_MATCH
    width = bit_width(A + p.D + 1)
    phrases = []
    codewords = []
    w = BitWriter()
    pos = 0
    while pos < n:
        slot, m = d.longest_match(data, pos)
        w.write(slot, width)
        codewords.append((slot, None))
        end = pos + m
        phrases.append(Phrase(tuple(data[pos:end]), pos))
        if touch:
            d.touch(slot)
        if end < n and p.D and m + 1 <= p.L_max:
            d.insert(tuple(data[pos:end + 1]))
        pos = end
    params = {"D": p.D, "L_max": p.L_max, "recency": int(p.recency)}
    container = Container(Algorithm.LZW_LRU, A, n, params, w.getvalue())
    parse = ParseResult(Algorithm.LZW_LRU, A, tuple(phrases), tuple(codewords), params)
    return container, parse


def lzwlru_decode(c: Container) -> SymbolSeq:
    if c.algorithm is not Algorithm.LZW_LRU:
        raise DecodeError(f"expected LZW_LRU container, got {c.algorithm.name}")
    A = c.alphabet_size
    n = c.original_length
    p = LruParams.from_params(c.params)
    d = _seeded_dictionary(A, p)
    touch = p.recency is RecencyMode.TOUCH_ON_MATCH
    width = bit_width(A + p.D + 1)
    r = BitReader(c.payload)
    out: list[int] = []
    prev = None
    while len(out) < n:
        index = r.read(width)
        pending = None
        if prev is not None and p.D and len(prev) + 1 <= p.L_max:
            pending = d.next_slot()
        if index == pending:
            # encoder evicted this slot's old entry before matching, so the
            # index can only name the entry being created now
            cur = prev + prev[:1]
        elif d.is_active(index):
            cur = d.phrase(index)
        elif prev is None and index == A and p.D:
            raise DecodeError(f"index {index}: self-reference with no previous phrase")
        else:
            raise DecodeError(f"index {index} refers to an inactive entry")
        if pending is not None:
            try:
                d.insert(prev + cur[:1])
            except ValueError:
                raise DecodeError("stream re-inserts an active phrase") from None
        if touch:
            d.touch(index)
        if len(out) + len(cur) > n:
            raise DecodeError("phrase overruns original length")
        out.extend(cur)
        prev = cur
    r.expect_end()
    return SymbolSeq(Alphabet.of_size(A), tuple(out))
