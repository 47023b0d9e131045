"""Empirical finite-state compressibility bounds and compression reports.

Ratios are bits per source bit: output bits divided by ``n * log2 A``.
Bound values never include the unspecified-constant slack terms; those are
reported alongside as separate fields.
"""
from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .codecs import ParseResult, codeword_bits, lz78_encode
from .codecs.lz78 import lz78_parse
from .core import Algorithm, Container


@dataclass(frozen=True)
class BoundParams:
    s: int = 1

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be >= 1")


@dataclass(frozen=True)
class PhraseStats:
    counts: Counter
    c: int
    n: int
    A: int

    @property
    def k(self) -> int:
        return len(self.counts)

    @property
    def distribution(self) -> dict:
        return {z: Fraction(m, self.c) for z, m in self.counts.items()}

    def entropy(self) -> float:
        """Shannon entropy (bits) of the phrase distribution."""
        c = self.c
        return math.log2(c) - sum(m * math.log2(m) for m in self.counts.values()) / c


def phrase_stats(parse: ParseResult) -> PhraseStats:
    if not parse.phrases:
        raise ValueError("phrase statistics need a nonempty parse")
    counts = parse.counts()
    return PhraseStats(counts, parse.total_phrases, parse.source_length,
                       parse.alphabet_size)


def lemma1_bound(stats: PhraseStats, bp: BoundParams = BoundParams()) -> float:
    """``(c / (n log2 A)) * (H(phrases) - 2 log2 s)``; may be negative."""
    scale = stats.c / (stats.n * math.log2(stats.A))
    return scale * (stats.entropy() - 2 * math.log2(bp.s))


def lemma1_slack(stats: PhraseStats) -> float:
    return stats.c / (stats.n * math.log2(stats.A))


def lz78_lower_estimate(x, alphabet=None) -> float:
    """``C_n log2 C_n / (n log2 A)`` with ``C_n`` the distinct LZ78 phrase count."""
    _, parse = lz78_encode(x, alphabet)
    n = parse.source_length
    if n == 0:
        raise ValueError("need at least one symbol")
    return _lower_estimate(parse.distinct_phrases, n, parse.alphabet_size)


def _lower_estimate(C: int, n: int, A: int) -> float:
    return C * math.log2(C) / (n * math.log2(A))


def nominal_bits(parse: ParseResult) -> float:
    """Idealised (real-valued) code length of the parse, per codec."""
    c = parse.total_phrases
    if c == 0:
        return 0.0
    A = parse.alphabet_size
    p = parse.params
    logA = math.log2(A)
    algo = parse.algorithm
    if algo is Algorithm.LZ78:
        return c * (math.log2(c) + 1 + logA)
    if algo is Algorithm.LZ78_LRU:
        return c * (math.log2(p["D"]) + 1 + logA)
    if algo is Algorithm.LZW:
        return c * math.log2(A + c)
    if algo is Algorithm.LZW_LRU:
        return c * math.log2(A + p["D"])
    if algo is Algorithm.LZ77W:
        return c * (math.log2(p["window"]) + math.log2(p["L_max"]) + logA)
    if algo is Algorithm.FSDL:
        return c * (math.log2(p["D"]) + 1 + p["L"] * logA) + p.get("tail", 0) * logA
    raise ValueError(f"unknown algorithm {algo}")


@dataclass
class CompressionReport:
    n: int
    c: int
    k: int
    overlong: int
    payload_bits: int
    nominal_ratio: float
    actual_ratio: float
    lemma1_bounds: dict = field(default_factory=dict)
    lemma1_slack: float | None = None
    lz78_lower_estimate: float | None = None
    algorithm: str = ""
    params: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "n": self.n, "c": self.c, "k": self.k, "overlong": self.overlong,
            "payload_bits": self.payload_bits,
            "nominal_ratio": self.nominal_ratio,
            "actual_ratio": self.actual_ratio,
        }
        for s, v in self.lemma1_bounds.items():
            d[f"lemma1_bound_s{s}"] = v
        d["lemma1_slack"] = self.lemma1_slack
        d["lz78_lower_estimate"] = self.lz78_lower_estimate
        d.update(self.extra)
        d["algorithm"] = self.algorithm
        d.update(self.params)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


REPORT_FIELDS = ["n", "c", "k", "overlong", "payload_bits", "nominal_ratio",
                 "actual_ratio"]


def csv_fields(s_values: Sequence[int], tail: Iterable[str] = ()) -> list[str]:
    """Fixed CSV column order: core counts and ratios, then bound fields."""
    return (REPORT_FIELDS + [f"lemma1_bound_s{s}" for s in s_values]
            + ["lemma1_slack", "lz78_lower_estimate"] + list(tail))


def reports_to_csv(rows: Sequence[dict], fields: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(fields), extrasaction="ignore",
                            lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in fields})
    return buf.getvalue()


def build_report(parse: ParseResult, container: Container,
                 s_values: Sequence[int] = (1,)) -> CompressionReport:
    if parse.algorithm is not container.algorithm:
        raise ValueError("parse and container come from different codecs")
    n = container.original_length
    block = parse.params.get("L", 1) if parse.algorithm is Algorithm.FSDL else 1
    covered = parse.source_length * block + parse.params.get("tail", 0)
    if covered != n:
        raise ValueError(f"parse covers {covered} symbols, container says {n}")
    payload_bits = container.payload.bit_length
    expected = codeword_bits(parse)
    if expected != payload_bits:
        raise ValueError(
            f"payload has {payload_bits} bits, codewords account for {expected}")
    params = {k: v for k, v in container.params.items()}
    report = CompressionReport(
        n=n, c=parse.total_phrases, k=parse.distinct_phrases,
        overlong=parse.overlong_count, payload_bits=payload_bits,
        nominal_ratio=0.0, actual_ratio=0.0, algorithm=container.algorithm.name,
        params=params)
    if n == 0:
        return report
    denom = n * math.log2(container.alphabet_size)
    report.actual_ratio = payload_bits / denom
    report.nominal_ratio = nominal_bits(parse) / denom
    if parse.algorithm is Algorithm.FSDL:
        # bounds in the super-alphabet live in the lossy module
        return report
    stats = phrase_stats(parse)
    report.lemma1_bounds = {s: lemma1_bound(stats, BoundParams(s)) for s in s_values}
    report.lemma1_slack = lemma1_slack(stats)
    if parse.algorithm is Algorithm.LZ78:
        C = parse.distinct_phrases
    else:
        C = len({ph.symbols for ph in lz78_parse(parse.concatenated())[0]})
    report.lz78_lower_estimate = _lower_estimate(C, n, container.alphabet_size)
    return report
