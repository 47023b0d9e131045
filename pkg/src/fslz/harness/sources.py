"""Synthetic sources with known entropy rates.

Randomness comes from numpy's PCG64 bit generator seeded with the 64-bit
seed. Each symbol consumes one double ``u = Generator.random()`` and is the
first index whose cumulative probability exceeds ``u``. Markov sources start
in state 0 (the first symbol is 0) and draw each later symbol from the row of
the previous one.
"""
from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass

import numpy as np

from ..core import Alphabet, SymbolSeq


class SourceKind(enum.Enum):
    IID = "iid"
    MARKOV = "markov"
    CONSTANT = "constant"
    PERIODIC = "periodic"


_SUM_TOLERANCE = 1e-9


def _normalise(row, name: str) -> tuple:
    row = [float(v) for v in row]
    if any(v < 0 or not math.isfinite(v) for v in row):
        raise ValueError(f"{name}: probabilities must be finite and non-negative")
    total = sum(row)
    if abs(total - 1) > _SUM_TOLERANCE:
        raise ValueError(f"{name}: probabilities sum to {total}, not 1")
    return tuple(v / total for v in row)


@dataclass(frozen=True)
class SourceSpec:
    kind: SourceKind
    n: int
    alphabet_size: int = 2
    probabilities: tuple | None = None
    transition: tuple | None = None
    pattern: tuple | None = None
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", SourceKind(self.kind))
        A = self.alphabet_size
        if A < 2:
            raise ValueError("alphabet_size must be >= 2")
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.kind is SourceKind.IID:
            if self.probabilities is None or len(self.probabilities) != A:
                raise ValueError("IID source needs one probability per symbol")
            object.__setattr__(self, "probabilities",
                               _normalise(self.probabilities, "probabilities"))
        elif self.kind is SourceKind.MARKOV:
            P = self.transition
            if P is None or len(P) != A or any(len(r) != A for r in P):
                raise ValueError("MARKOV source needs an A x A transition matrix")
            object.__setattr__(self, "transition", tuple(
                _normalise(r, f"transition row {i}") for i, r in enumerate(P)))
        elif self.kind is SourceKind.PERIODIC:
            pat = tuple(range(A)) if self.pattern is None else tuple(self.pattern)
            if not pat or any(not 0 <= s < A for s in pat):
                raise ValueError("pattern must be a nonempty sequence of symbols < A")
            object.__setattr__(self, "pattern", pat)


def _draw(cum: list[float], u: float) -> int:
    return min(bisect.bisect_right(cum, u), len(cum) - 1)


def generate(spec: SourceSpec) -> SymbolSeq:
    alphabet = Alphabet.of_size(spec.alphabet_size)
    n = spec.n
    if spec.kind is SourceKind.CONSTANT:
        return SymbolSeq(alphabet, (0,) * n)
    if spec.kind is SourceKind.PERIODIC:
        pat = spec.pattern
        reps = -(-n // len(pat))
        return SymbolSeq(alphabet, (pat * reps)[:n])
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    u = rng.random(n)
    if spec.kind is SourceKind.IID:
        cum = np.cumsum(spec.probabilities)
        data = np.minimum(np.searchsorted(cum, u, side="right"), spec.alphabet_size - 1)
        return SymbolSeq(alphabet, tuple(data.tolist()))
    rows = [list(np.cumsum(r)) for r in spec.transition]
    data = []
    state = 0
    for i, ui in enumerate(u.tolist()):
        if i:
            state = _draw(rows[state], ui)
        data.append(state)
    return SymbolSeq(alphabet, tuple(data))


def binary_entropy(p: float) -> float:
    return shannon_entropy((p, 1 - p))


def shannon_entropy(probs) -> float:
    return -sum(p * math.log2(p) for p in probs if p > 0)


def _irreducible(P: np.ndarray) -> bool:
    A = len(P)
    adj = P > 0
    # strongly connected iff state 0 reaches everything forwards and backwards
    for graph in (adj, adj.T):
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j in np.flatnonzero(graph[i]).tolist():
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        if len(seen) != A:
            return False
    return True


def stationary_distribution(P, tol: float = 1e-12, max_iter: int = 1_000_000) -> np.ndarray:
    """Power iteration on the lazy chain ``(I + P) / 2``; errors unless irreducible."""
    P = np.asarray(P, dtype=float)
    if not _irreducible(P):
        raise ValueError("chain is not irreducible: stationary distribution not unique")
    lazy = 0.5 * (np.eye(len(P)) + P)
    pi = np.full(len(P), 1 / len(P))
    # the step size understates the error by 1/(1 - rate); stop well below tol
    stop = max(tol * 1e-3, 1e-16)
    for _ in range(max_iter):
        nxt = pi @ lazy
        if np.abs(nxt - pi).max() <= stop:
            return nxt / nxt.sum()
        pi = nxt
    raise ValueError("power iteration did not converge")


def entropy_rate(spec: SourceSpec) -> float:
    """Bits per symbol; deterministic sources have rate 0."""
    if spec.kind is SourceKind.IID:
        return shannon_entropy(spec.probabilities)
    if spec.kind is SourceKind.MARKOV:
        pi = stationary_distribution(spec.transition)
        return float(sum(pi[i] * shannon_entropy(row)
                         for i, row in enumerate(spec.transition)))
    return 0.0


def parse_source(text: str) -> SourceSpec:
    """Parse a compact source description.

    ``bernoulli:P:N[:seedS]``, ``iid:p0,p1,...:N[:seedS]``,
    ``markov:r0/r1/...:N[:seedS]`` with comma separated rows,
    ``constant:N[:A]``, ``periodic:s0,s1,...:N[:A]``.
    """
    parts = text.split(":")
    kind = parts[0].lower()

    def seed_of(rest):
        if not rest:
            return 0
        token = rest[0]
        return int(token[4:] if token.startswith("seed") else token)

    try:
        if kind == "bernoulli":
            p = float(parts[1])
            return SourceSpec(SourceKind.IID, int(parts[2]), 2, (1 - p, p),
                              seed=seed_of(parts[3:]))
        if kind == "iid":
            probs = [float(v) for v in parts[1].split(",")]
            return SourceSpec(SourceKind.IID, int(parts[2]), len(probs), tuple(probs),
                              seed=seed_of(parts[3:]))
        if kind == "markov":
            rows = [[float(v) for v in r.split(",")] for r in parts[1].split("/")]
            return SourceSpec(SourceKind.MARKOV, int(parts[2]), len(rows),
                              transition=tuple(map(tuple, rows)), seed=seed_of(parts[3:]))
        if kind == "constant":
            A = int(parts[2]) if len(parts) > 2 else 2
            return SourceSpec(SourceKind.CONSTANT, int(parts[1]), A)
        if kind == "periodic":
            pat = tuple(int(v) for v in parts[1].split(","))
            A = int(parts[3]) if len(parts) > 3 else max(2, max(pat) + 1)
            return SourceSpec(SourceKind.PERIODIC, int(parts[2]), A, pattern=pat)
    except (IndexError, ValueError) as exc:
        raise ValueError(f"bad source description {text!r}: {exc}") from None
    raise ValueError(f"unknown source kind {kind!r}")
