"""Greedy adaptive quantizer for L-blocks.

The input is cut into L-blocks. Repeatedly, the candidate block that lies
within ``L * d_max`` of the most still-unreplaced input blocks becomes the
next center and replaces all of them, until every block is replaced.
"""
from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .._validation import check_fraction, check_int, check_sequence
from ..core import SymbolSeq
from .measures import DistortionMeasure, get_measure

EXHAUSTIVE_LIMIT = 1 << 20


class CandidateMode(enum.Enum):
    EXHAUSTIVE = "exhaustive"
    OBSERVED = "observed"


@dataclass(frozen=True)
class QuantizerConfig:
    L: int
    d_max: Fraction = Fraction(0)
    candidate_mode: CandidateMode = CandidateMode.OBSERVED
    measure: DistortionMeasure = field(default_factory=lambda: get_measure("hamming"))
    window: int | None = None

    def __post_init__(self):
        check_int(self.L, "L", 1)
        object.__setattr__(self, "d_max", check_fraction(self.d_max, "d_max"))
        object.__setattr__(self, "candidate_mode", CandidateMode(self.candidate_mode))
        object.__setattr__(self, "measure", get_measure(self.measure))
        if self.window is not None:
            check_int(self.window, "window", 1)
            if self.window % self.L:
                raise ValueError("window must be a multiple of L")

    @property
    def budget(self) -> Fraction:
        return self.L * self.d_max


@dataclass
class Codebook:
    """Centers in selection order, per-block assignments, coverage at selection.

    ``window_starts[w]`` is the index of the first center chosen in window w.
    """

    L: int
    centers: list = field(default_factory=list)
    assignments: list = field(default_factory=list)
    coverage_counts: list = field(default_factory=list)
    window_starts: list = field(default_factory=lambda: [0])

    def to_json(self) -> str:
        return json.dumps({
            "L": self.L,
            "centers": [list(c) for c in self.centers],
            "assignments": list(self.assignments),
            "coverage_counts": list(self.coverage_counts),
            "window_starts": list(self.window_starts),
        })

    @classmethod
    def from_json(cls, text: str) -> "Codebook":
        d = json.loads(text)
        return cls(d["L"], [tuple(c) for c in d["centers"]], d["assignments"],
                   d["coverage_counts"], d["window_starts"])

    def quantized_blocks(self) -> list[tuple]:
        return [self.centers[a] for a in self.assignments]


def to_blocks(data: Sequence[int], L: int) -> list[tuple]:
    if len(data) % L:
        raise ValueError(f"length {len(data)} is not a multiple of L={L}")
    return [tuple(data[i:i + L]) for i in range(0, len(data), L)]


def ball_coverage(center, blocks, covered, cfg: QuantizerConfig) -> int:
    """Uncovered blocks within the block budget of ``center``."""
    budget = cfg.budget
    d = cfg.measure
    return sum(1 for b, done in zip(blocks, covered)
               if not done and Fraction(d(b, center)) <= budget)


def candidate_blocks(blocks, A: int, cfg: QuantizerConfig) -> list[tuple]:
    """Candidate centers in lexicographic order."""
    if cfg.candidate_mode is CandidateMode.EXHAUSTIVE:
        if A ** cfg.L > EXHAUSTIVE_LIMIT:
            raise ValueError(f"EXHAUSTIVE mode needs A**L <= 2**20, got {A}**{cfg.L}")
        return list(itertools.product(range(A), repeat=cfg.L))
    return sorted(set(blocks))


def _greedy_window(blocks: list[tuple], A: int, cfg: QuantizerConfig):
    values = sorted(set(blocks))
    index = {v: i for i, v in enumerate(values)}
    weights = np.zeros(len(values), dtype=np.int64)
    for b in blocks:
        weights[index[b]] += 1
    cands = candidate_blocks(values, A, cfg)
    C = np.array(cands, dtype=np.int64).reshape(len(cands), cfg.L)
    V = np.array(values, dtype=np.int64).reshape(len(values), cfg.L)
    within = cfg.measure.within(C, V, cfg.budget)
    coverage = within.astype(np.int64) @ weights
    centers, counts = [], []
    center_of_value = np.full(len(values), -1, dtype=np.int64)
    live = weights > 0
    while live.any():
        best = int(np.argmax(coverage))  # first maximum = lexicographically smallest
        taken = within[best] & live
        if not taken.any():
            raise RuntimeError("no candidate covers the remaining blocks")
        centers.append(cands[best])
        counts.append(int(coverage[best]))
        center_of_value[taken] = len(centers) - 1
        coverage -= within[:, taken].astype(np.int64) @ weights[taken]
        live &= ~taken
    assignments = [int(center_of_value[index[b]]) for b in blocks]
    return centers, counts, assignments


def greedy_quantize(x, cfg: QuantizerConfig, alphabet=None) -> tuple[Codebook, SymbolSeq]:
    seq = check_sequence(x, alphabet)
    blocks = to_blocks(seq.data, cfg.L)
    A = seq.alphabet.size
    per_window = len(blocks) if cfg.window is None else cfg.window // cfg.L
    book = Codebook(cfg.L, window_starts=[])
    for lo in range(0, max(len(blocks), 1), max(per_window, 1)):
        chunk = blocks[lo:lo + per_window]
        book.window_starts.append(len(book.centers))
        if not chunk:
            break
        centers, counts, assignments = _greedy_window(chunk, A, cfg)
        offset = len(book.centers)
        book.centers.extend(centers)
        book.coverage_counts.extend(counts)
        book.assignments.extend(a + offset for a in assignments)
    quantized = []
    for block in book.quantized_blocks():
        quantized.extend(block)
    return book, SymbolSeq(seq.alphabet, tuple(quantized))


class GreedyQuantizer(TransformerMixin, BaseEstimator):
    """Estimator wrapper: ``fit`` builds the codebook, ``transform`` applies it.

    ``transform`` maps each block to the earliest center within budget, which
    on the fitted data reproduces the greedy assignment exactly.
    """

    def __init__(self, L=2, d_max="0", candidate_mode="observed", measure="hamming",
                 window=None, alphabet=None):
        self.L = L
        self.d_max = d_max
        self.candidate_mode = candidate_mode
        self.measure = measure
        self.window = window
        self.alphabet = alphabet

    @property
    def config(self) -> QuantizerConfig:
        return QuantizerConfig(self.L, self.d_max, self.candidate_mode, self.measure,
                               self.window)

    def fit(self, X, y=None):
        self.codebook_, self.quantized_ = greedy_quantize(X, self.config, self.alphabet)
        return self

    def transform(self, X) -> SymbolSeq:
        if not hasattr(self, "codebook_"):
            raise AttributeError("GreedyQuantizer is not fitted yet; call fit first")
        cfg = self.config
        seq = check_sequence(X, self.alphabet)
        out = []
        for b in to_blocks(seq.data, cfg.L):
            for center in self.codebook_.centers:
                if Fraction(cfg.measure(b, center)) <= cfg.budget:
                    out.extend(center)
                    break
            else:
                raise ValueError(f"block {b} is not within budget of any center")
        return SymbolSeq(seq.alphabet, tuple(out))
