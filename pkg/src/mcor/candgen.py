"""Candidate extensions under the all-items, frequent-item and frequent-pair strategies."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .seqdb import GapConstraint, IndexedDatabase, Item, Pattern


class Strategy(str, enum.Enum):
    AET = "AET"
    FET = "FET"
    BET = "BET"


@dataclass(frozen=True)
class FrequentItems:
    items: tuple[Item, ...]
    supports: dict[Item, int]

    def __contains__(self, item) -> bool:
        return item in self.supports and item in self.items

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class FrequentPairs:
    pairs: frozenset[tuple[Item, Item]]
    supports: dict[tuple[Item, Item], int]

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)


def item_supports(db: IndexedDatabase) -> dict[Item, int]:
    """Single-item support is simply the item's count."""
    counts = db.item_counts()
    return {it: int(counts[c]) for c, it in enumerate(db.alphabet)}


def frequent_items(db: IndexedDatabase, minsup: float) -> FrequentItems:
    sups = item_supports(db)
    items = tuple(it for it in db.alphabet if sups[it] > 0 and sups[it] >= minsup)
    return FrequentItems(items, sups)


def frequent_pairs(db: IndexedDatabase, f1: FrequentItems, gap: GapConstraint,
                   minsup: float) -> FrequentPairs:
    """Frequent length-two patterns over F1 x F1 (the join of frequent items)."""
    if not len(f1) or len(db) == 0:
        return FrequentPairs(frozenset(), {})
    codes = np.asarray([db.code[it] for it in f1.items], dtype=np.int64)
    table = _kernels.kernels.pair_supports(db.positions, db.offsets, codes, gap.a, gap.b)
    sups = {(x, y): int(table[i, j]) for i, x in enumerate(f1.items) for j, y in enumerate(f1.items)}
    return FrequentPairs(frozenset(k for k, v in sups.items() if v > 0 and v >= minsup), sups)


def extend(q: Pattern, f1: FrequentItems | None, f2: FrequentPairs | None,
           strategy: Strategy | str, alphabet) -> list[Pattern]:
    """Candidate superpatterns ``q . y`` in alphabet order."""
    strategy = Strategy(strategy)
    if strategy is Strategy.AET:
        return [q.extend(y) for y in alphabet]
    if strategy is Strategy.FET:
        return [q.extend(y) for y in f1]
    last = q.items[-1]
    return [q.extend(y) for y in f1 if (last, y) in f2]
