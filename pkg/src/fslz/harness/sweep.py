"""Dictionary-size sweeps with LZ78 and entropy-rate reference rows."""
from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from ..bounds import build_report, csv_fields, reports_to_csv
from ..codecs import encode, lz78_encode
from ..core import SymbolSeq
from ..dictionary import RecencyMode, default_max_len
from .io import read_symbols
from .sources import SourceSpec, entropy_rate, generate

SWEEP_CODECS = ("lz78lru", "lzwlru", "lz77w")
TAIL_FIELDS = ["row", "algorithm", "D", "L_max", "recency", "entropy_rate"]


@dataclass(frozen=True)
class SweepSpec:
    input: "SourceSpec | str | Path"
    codec: str = "lz78lru"
    D_values: tuple = (16, 64, 256, 1024)
    lmax: "str | int" = "square"
    s_values: tuple = (1,)
    recency: RecencyMode = RecencyMode.TOUCH_ON_MATCH
    bits: bool = False
    alphabet_size: int | None = None
    out: "str | Path | None" = None
    n_jobs: int = 1

    def __post_init__(self):
        if self.codec not in SWEEP_CODECS:
            raise ValueError(f"sweep codec must be one of {SWEEP_CODECS}")
        D = tuple(self.D_values)
        if not D or any(b <= a for a, b in zip(D, D[1:])):
            raise ValueError("D_values must be nonempty and strictly increasing")
        object.__setattr__(self, "D_values", D)
        if self.lmax != "square" and (not isinstance(self.lmax, int) or self.lmax < 1):
            raise ValueError("lmax must be 'square' or a positive integer")

    def lmax_for(self, D: int) -> int:
        return default_max_len(D) if self.lmax == "square" else self.lmax


def _load(spec: SweepSpec) -> tuple[SymbolSeq, float | None]:
    if isinstance(spec.input, SourceSpec):
        return generate(spec.input), entropy_rate(spec.input)
    return read_symbols(Path(spec.input), bits=spec.bits,
                        alphabet_size=spec.alphabet_size), None


def _row(args):
    seq, codec, D, L_max, recency, s_values = args
    container, parse = encode(seq, codec, D=D, L_max=L_max, recency=recency)
    row = build_report(parse, container, s_values).to_dict()
    row["row"] = "data"
    return row


def run_sweep(spec: SweepSpec) -> list[dict]:
    """One report row per D (in the given order), then the reference rows."""
    seq, h = _load(spec)
    jobs = [(seq, spec.codec, D, spec.lmax_for(D), spec.recency, spec.s_values)
            for D in spec.D_values]
    if spec.n_jobs > 1:
        with ProcessPoolExecutor(spec.n_jobs) as pool:
            rows = list(pool.map(_row, jobs))
    else:
        rows = [_row(j) for j in jobs]
    container, parse = lz78_encode(seq)
    ref = build_report(parse, container, spec.s_values).to_dict()
    ref["row"] = "reference"
    rows.append(ref)
    ent = {"row": "reference", "algorithm": "ENTROPY_RATE", "n": len(seq),
           "entropy_rate": h}
    if h is not None:
        ent["nominal_ratio"] = ent["actual_ratio"] = h / math.log2(seq.alphabet.size)
    rows.append(ent)
    if spec.out is not None:
        write_rows(rows, spec.out, spec.s_values)
    return rows


def write_rows(rows: list[dict], out, s_values) -> None:
    out = Path(out)
    if out.suffix == ".json":
        out.write_text(json.dumps(rows, indent=1) + "\n")
    else:
        out.write_text(reports_to_csv(rows, csv_fields(s_values, TAIL_FIELDS)))
