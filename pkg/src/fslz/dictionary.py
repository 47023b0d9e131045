"""Trie-backed phrase dictionary with slot ids and least-recently-used eviction."""
from __future__ import annotations

import enum
from collections import OrderedDict
from dataclasses import dataclass
from typing import Hashable, Sequence

from ._validation import check_int
from .core import bit_width

INACTIVE = -1


class RecencyMode(enum.IntEnum):
    TOUCH_ON_MATCH = 0
    INSERT_ONLY = 1


def default_max_len(D: int) -> int:
    """``(ceil(log2 D))**2``, floored at 1 so tiny dictionaries stay usable."""
    return max(1, bit_width(D) ** 2)


@dataclass(frozen=True)
class LruParams:
    D: int
    L_max: int | None = None
    recency: RecencyMode = RecencyMode.TOUCH_ON_MATCH

    def __post_init__(self):
        check_int(self.D, "D", 0)
        if self.L_max is None:
            object.__setattr__(self, "L_max", default_max_len(self.D))
        check_int(self.L_max, "L_max", 1)
        object.__setattr__(self, "recency", RecencyMode(self.recency))

    @classmethod
    def from_params(cls, params) -> "LruParams":
        return cls(params["D"], params["L_max"], RecencyMode(params["recency"]))


class _Node:
    __slots__ = ("children", "slot", "parent", "symbol")

    def __init__(self, parent=None, symbol=None):
        self.children: dict = {}
        self.slot = INACTIVE
        self.parent = parent
        self.symbol = symbol


class PhraseDictionary:
    """At most ``capacity`` evictable phrases of length <= ``max_len``.

    Evictable entries hold slot ids ``first_slot .. first_slot + capacity - 1``.
    Permanent entries (``seed``) are never evicted and carry caller-chosen ids.
    Nodes left with no active mark and no children are pruned, so the trie is
    not prefix closed: an entry may be active while its prefixes are not.
    """

    def __init__(self, capacity: int, max_len: int, first_slot: int = 1):
        self.capacity = check_int(capacity, "capacity", 0)
        self.max_len = check_int(max_len, "max_len", 1)
        self.first_slot = first_slot
        self.root = _Node()
        self._slots: dict[int, _Node] = {}
        self._recency: OrderedDict[int, None] = OrderedDict()
        self._next_free = first_slot
        self.evictions = 0

    def __len__(self):
        """Number of active evictable entries."""
        return len(self._recency)

    def __contains__(self, phrase):
        node = self._find(phrase)
        return node is not None and node.slot != INACTIVE

    def _find(self, phrase):
        node = self.root
        for s in phrase:
            node = node.children.get(s)
            if node is None:
                return None
        return node

    def seed(self, phrase: Sequence[Hashable], slot: int) -> None:
        """Add a permanent entry under ``slot``."""
        if slot in self._slots:
            raise ValueError(f"slot {slot} already in use")
        node = self._make_path(phrase)
        if node.slot != INACTIVE:
            raise ValueError("phrase already active")
        node.slot = slot
        self._slots[slot] = node

    def longest_match(self, seq: Sequence[Hashable], pos: int = 0) -> tuple[int, int]:
        """Deepest active entry that is a prefix of ``seq[pos:]``.

        Returns ``(slot, length)``; ``(0, 0)`` when no active entry matches.
        """
        node = self.root
        best_slot = 0
        best_len = 0
        i = pos
        end = min(len(seq), pos + self.max_len)
        while i < end:
            node = node.children.get(seq[i])
            if node is None:
                break
            i += 1
            if node.slot != INACTIVE:
                best_slot = node.slot
                best_len = i - pos
        return best_slot, best_len

    def touch(self, slot: int) -> None:
        if slot in self._recency:
            self._recency.move_to_end(slot)

    def next_slot(self) -> int:
        """Slot the next ``insert`` will occupy."""
        if self.capacity == 0:
            raise ValueError("dictionary has no evictable capacity")
        if self._next_free < self.first_slot + self.capacity:
            return self._next_free
        return next(iter(self._recency))

    def insert(self, phrase: Sequence[Hashable]) -> int:
        if len(phrase) > self.max_len:
            raise ValueError(f"phrase length {len(phrase)} exceeds max_len {self.max_len}")
        if len(phrase) == 0:
            raise ValueError("cannot insert the empty phrase")
        if self.capacity == 0:
            raise ValueError("dictionary has no evictable capacity")
        node = self.root
        for s in phrase:
            node = node.children.get(s)
            if node is None:
                break
        else:
            if node.slot != INACTIVE:
                raise ValueError("phrase already active")
        # lowest free slot first; free slots only ever form a suffix of the range
        if self._next_free < self.first_slot + self.capacity:
            slot = self._next_free
            self._next_free += 1
        else:
            slot, _ = self._recency.popitem(last=False)
            self._deactivate(self._slots.pop(slot))
            self.evictions += 1
        node = self._make_path(phrase)
        node.slot = slot
        self._slots[slot] = node
        self._recency[slot] = None
        return slot

    def _make_path(self, phrase):
        node = self.root
        for s in phrase:
            child = node.children.get(s)
            if child is None:
                child = _Node(node, s)
                node.children[s] = child
            node = child
        return node

    def _deactivate(self, node: _Node) -> None:
        node.slot = INACTIVE
        while node is not self.root and node.slot == INACTIVE and not node.children:
            parent = node.parent
            del parent.children[node.symbol]
            node = parent

    def phrase(self, slot: int) -> tuple:
        node = self._slots.get(slot)
        if node is None:
            raise KeyError(slot)
        out = []
        while node is not self.root:
            out.append(node.symbol)
            node = node.parent
        return tuple(reversed(out))

    def is_active(self, slot: int) -> bool:
        return slot in self._slots

    def entries(self) -> dict[int, tuple]:
        """Active entries, slot -> phrase."""
        return {slot: self.phrase(slot) for slot in self._slots}

    def recency_order(self) -> list[int]:
        """Evictable slots from least to most recently used."""
        return list(self._recency)

    def node_count(self) -> int:
        count = 0
        stack = [self.root]
        while stack:
            node = stack.pop()
            count += 1
            stack.extend(node.children.values())
        return count - 1
