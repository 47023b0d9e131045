from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from ..core import Algorithm


class Phrase:
    """One parsed phrase and where it starts in the source.

    A plain slotted class: encoders create one per phrase, and a frozen
    dataclass costs several times more to construct.
    """

    __slots__ = ("symbols", "first_position")

    def __init__(self, symbols: tuple, first_position: int):
        self.symbols = symbols
        self.first_position = first_position

    def __len__(self):
        return len(self.symbols)

    def __eq__(self, other):
        if not isinstance(other, Phrase):
            return NotImplemented
        return self.symbols == other.symbols and self.first_position == other.first_position

    def __hash__(self):
        return hash((self.symbols, self.first_position))

    def __repr__(self):
        return f"Phrase(symbols={self.symbols!r}, first_position={self.first_position})"


@dataclass(frozen=True)
class ParseResult:
    """Phrases and codewords produced by one encode call.

    ``codewords`` entries are ``(slot, extension)`` for the LZ78 family,
    ``(index, None)`` for LZW and ``(offset, length, extension)`` for LZ77W.
    ``extension`` is None only on a final phrase that ended on a match.
    """

    algorithm: Algorithm
    alphabet_size: int
    phrases: tuple
    codewords: tuple
    params: dict = field(default_factory=dict)

    @property
    def total_phrases(self) -> int:
        return len(self.phrases)

    @property
    def overlong_count(self) -> int:
        """Phrases of length exactly ``L_max + 1``; zero for codecs with no cap."""
        L_max = self.params.get("L_max")
        if L_max is None:
            return 0
        return sum(1 for p in self.phrases if len(p.symbols) == L_max + 1)

    @property
    def distinct_phrases(self) -> int:
        return len(self.counts())

    @property
    def source_length(self) -> int:
        return sum(len(p.symbols) for p in self.phrases)

    def counts(self) -> Counter:
        return Counter(p.symbols for p in self.phrases)

    def concatenated(self) -> tuple:
        out = []
        for p in self.phrases:
            out.extend(p.symbols)
        return tuple(out)
