"""Distortion-limited pipeline: greedy L-block quantizer, then LZ78(LRU) over blocks.

Payload: LZ78(LRU) codewords over the super-alphabet of L-blocks (each
extension block written as L symbols of ``ceil(log2 A)`` bits), followed by
the ``n mod L`` trailing symbols stored literally.
"""
from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from typing import Sequence

from sklearn.base import BaseEstimator

from .._validation import check_sequence
from ..bounds import BoundParams, build_report
from ..codecs import ParseResult
from ..codecs.lz78 import lru_parse, lru_read, lru_write
from ..core import Algorithm, Alphabet, BitReader, BitWriter, Container, SymbolSeq
from ..dictionary import LruParams, RecencyMode
from ..exceptions import DecodeError
from .quantizer import QuantizerConfig, greedy_quantize, to_blocks


def coupled_defaults(L: int) -> dict:
    """Defaults tying D to L: ``log2 D = L**3``, ``N >= D log2 D``, ``L_max = (log2 D)**2``."""
    log_d = L ** 3
    D = 1 << log_d
    return {"D": D, "L_max": log_d ** 2, "min_N": D * log_d}


def fsld_bound(quantized_blocks: Sequence[tuple], bp: BoundParams, L: int, A: int,
               reading: str = "distinct") -> float:
    """Empirical lower bound for distortion-limited FS compression of L-blocks.

    ``reading="distinct"`` sums ``p log2(1/p)`` once per distinct block value;
    ``reading="all"`` sums it once per block position (duplicates repeated).
    The ``O(1/(L log2 A))`` slack is left out; see ``fsld_slack``.
    """
    if not quantized_blocks:
        raise ValueError("need at least one block")
    c = len(quantized_blocks)
    N = c * L
    counts = Counter(quantized_blocks).values()
    if reading == "distinct":
        total = sum((m / c) * math.log2(c / m) for m in counts)
    elif reading == "all":
        total = sum(m * (m / c) * math.log2(c / m) for m in counts)
    else:
        raise ValueError(f"unknown reading {reading!r}")
    logA = math.log2(A)
    return L / (N * logA) * total - 2 * math.log2(bp.s) / (L * logA)


def fsld_slack(L: int, A: int) -> float:
    return 1 / (L * math.log2(A))


def _block_io(alphabet: Alphabet, L: int):
    bps = alphabet.bits_per_symbol
    A = alphabet.size

    def write_block(w, block):
        for s in block:
            w.write(s, bps)

    def read_block(r):
        block = tuple(r.read(bps) for _ in range(L))
        if any(s >= A for s in block):
            raise DecodeError("block symbol outside alphabet")
        return block

    return write_block, read_block


def _default_lru(L: int) -> LruParams:
    c = coupled_defaults(L)
    if c["D"] >= 1 << 64:
        raise ValueError(f"coupled default D=2**{L ** 3} does not fit the container; "
                         "pass explicit LRU parameters")
    return LruParams(c["D"], c["L_max"])


def fsdl_encode_with_parse(x, cfg: QuantizerConfig, p: LruParams | None = None,
                           alphabet=None):
    """Returns ``(container, parse, codebook)``; the parse runs over L-blocks."""
    seq = check_sequence(x, alphabet)
    if p is None:
        p = _default_lru(cfg.L)
    if p.D < 1:
        raise ValueError("FSDL needs D >= 1")
    n = len(seq)
    cut = n - n % cfg.L
    tail = seq.data[cut:]
    book, quantized = greedy_quantize(SymbolSeq(seq.alphabet, seq.data[:cut]), cfg)
    blocks = to_blocks(quantized.data, cfg.L)
    phrases, codewords, _ = lru_parse(blocks, p)
    write_block, _ = _block_io(seq.alphabet, cfg.L)
    w = BitWriter()
    lru_write(w, codewords, p.D, write_block)
    bps = seq.alphabet.bits_per_symbol
    for s in tail:
        w.write(s, bps)
    params = {"D": p.D, "L_max": p.L_max, "recency": int(p.recency), "L": cfg.L,
              "d_max_num": cfg.d_max.numerator, "d_max_den": cfg.d_max.denominator}
    if cfg.window is not None:
        params["window"] = cfg.window
    container = Container(Algorithm.FSDL, seq.alphabet.size, n, params, w.getvalue())
    parse = ParseResult(Algorithm.FSDL, seq.alphabet.size, tuple(phrases),
                        tuple(codewords), {**params, "tail": len(tail)})
    return container, parse, book


def fsdl_encode(x, cfg: QuantizerConfig, p: LruParams | None = None, alphabet=None,
                s_values: Sequence[int] = (1,)):
    """Quantize then compress; returns ``(container, report)``."""
    container, parse, book = fsdl_encode_with_parse(x, cfg, p, alphabet)
    report = build_report(parse, container, s_values)
    blocks = book.quantized_blocks()
    if blocks:
        A = container.alphabet_size
        report.extra.update({
            f"fsld_bound_s{s}": fsld_bound(blocks, BoundParams(s), cfg.L, A)
            for s in s_values})
        report.extra["fsld_slack"] = fsld_slack(cfg.L, A)
    report.extra["centers"] = len(book.centers)
    return container, report


def fsdl_decode(c: Container) -> SymbolSeq:
    """Recover the quantized sequence (plus the literal tail)."""
    if c.algorithm is not Algorithm.FSDL:
        raise DecodeError(f"expected FSDL container, got {c.algorithm.name}")
    alphabet = Alphabet.of_size(c.alphabet_size)
    L = c.params["L"]
    p = LruParams.from_params(c.params)
    _, read_block = _block_io(alphabet, L)
    n = c.original_length
    r = BitReader(c.payload)
    out = []
    for block in lru_read(r, n // L, p, read_block):
        out.extend(block)
    bps = alphabet.bits_per_symbol
    for _ in range(n % L):
        s = r.read(bps)
        if s >= alphabet.size:
            raise DecodeError("tail symbol outside alphabet")
        out.append(s)
    r.expect_end()
    return SymbolSeq(alphabet, tuple(out))


def d_max_of(c: Container) -> Fraction:
    return Fraction(c.params["d_max_num"], c.params["d_max_den"])


class FSDLCodec(BaseEstimator):
    """Estimator wrapper around the quantize-then-LZ78(LRU) pipeline.

    ``D=None`` takes the coupled default from :func:`coupled_defaults`.
    """

    def __init__(self, L=2, d_max="0", candidate_mode="observed", measure="hamming",
                 window=None, D=None, L_max=None, recency=RecencyMode.TOUCH_ON_MATCH,
                 alphabet=None):
        self.L = L
        self.d_max = d_max
        self.candidate_mode = candidate_mode
        self.measure = measure
        self.window = window
        self.D = D
        self.L_max = L_max
        self.recency = recency
        self.alphabet = alphabet

    def _configs(self):
        cfg = QuantizerConfig(self.L, self.d_max, self.candidate_mode, self.measure,
                              self.window)
        if self.D is None:
            p = _default_lru(self.L)
            if self.L_max is not None or self.recency != p.recency:
                p = LruParams(p.D, self.L_max if self.L_max is not None else p.L_max,
                              self.recency)
        else:
            p = LruParams(self.D, self.L_max, self.recency)
        return cfg, p

    def fit(self, X, y=None):
        cfg, p = self._configs()
        self.container_, self.parse_, self.codebook_ = fsdl_encode_with_parse(
            X, cfg, p, self.alphabet)
        self.report_ = build_report(self.parse_, self.container_)
        return self

    def encode(self, X) -> Container:
        return self.fit(X).container_

    def decode(self, container: Container) -> SymbolSeq:
        return fsdl_decode(container)
