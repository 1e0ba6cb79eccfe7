"""Nonoverlapping support via DBI, plus an exhaustive reference oracle."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence as Seq

import numpy as np

from . import _kernels
from .seqdb import IndexedDatabase, IndexedSequence, Pattern, Sequence

Occurrence = tuple[int, ...]


@dataclass(frozen=True)
class MatchStats:
    support: int
    consumed: int
    peeked: int


def _single(idx: IndexedSequence, p: Pattern):
    """Pack one IndexedSequence into the CSR layout the kernels expect."""
    items = list(dict.fromkeys(p.items))
    code = {it: i for i, it in enumerate(items)}
    arrays = [np.asarray(idx[it], dtype=np.int64) for it in items]
    row = np.zeros(len(items) + 1, dtype=np.int64)
    row[1:] = np.cumsum([len(a) for a in arrays])
    positions = np.concatenate(arrays) if arrays else np.empty(0, dtype=np.int64)
    pat = np.asarray([code[t] for t in p.items], dtype=np.int64)
    return positions, row, pat


def dbi_match(idx: IndexedSequence, p: Pattern) -> tuple[list[Occurrence], MatchStats]:
    positions, row, pat = _single(idx, p)
    occ, consumed, peeked = _kernels.kernels.dbi_occurrences_seq(positions, row, pat, p.gap.a, p.gap.b)
    occs = [tuple(int(x) for x in r) for r in occ]
    return occs, MatchStats(len(occs), int(consumed), int(peeked))


def dbi_support(idx: IndexedSequence, p: Pattern) -> int:
    """Number of minimal nonoverlapping occurrences of ``p`` in one indexed sequence."""
    positions, row, pat = _single(idx, p)
    empty = np.empty((0, len(p)), dtype=np.int64)
    return int(_kernels.kernels.dbi_sequence(positions, row, pat, p.gap.a, p.gap.b, empty)[0])


def dbi_occurrences(idx: IndexedSequence, p: Pattern) -> list[Occurrence]:
    """Witness tuples found by DBI, in ascending order of their first position."""
    return dbi_match(idx, p)[0]


def db_support(db: IndexedDatabase, p: Pattern) -> int:
    """Support summed over all sequences of an indexed database."""
    pat = db.encode(p.items)
    if pat is None or len(db) == 0:
        return 0
    return int(_kernels.kernels.db_support(db.positions, db.offsets, pat, p.gap.a, p.gap.b))


def seq_supports(db: IndexedDatabase, p: Pattern) -> np.ndarray:
    pat = db.encode(p.items)
    if pat is None:
        return np.zeros(len(db), dtype=np.int64)
    return _kernels.kernels.seq_supports(db.positions, db.offsets, pat, p.gap.a, p.gap.b)


# -- reference oracle ---------------------------------------------------------

def oracle_all_occurrences(seq: Sequence | Seq[str], p: Pattern) -> list[Occurrence]:
    """Every position tuple matching ``p`` under its gap constraint, lexicographically sorted."""
    s = tuple(seq)
    n, a, b = len(s), p.gap.a, p.gap.b
    partial: list[Occurrence] = [(i,) for i in range(1, n + 1) if s[i - 1] == p.items[0]]
    for item in p.items[1:]:
        nxt = []
        for occ in partial:
            last = occ[-1]
            for pos in range(last + a + 1, min(last + b + 1, n) + 1):
                if s[pos - 1] == item:
                    nxt.append(occ + (pos,))
        partial = nxt
    return sorted(partial)


def oracle_max_nonoverlapping(occs: Iterable[Occurrence]) -> int:
    """Largest subset of ``occs`` in which no two tuples share a position at the same index.

    Exact branch and bound: branch on the earliest remaining occurrence
    (take it / drop it), memoise on the used positions that some remaining
    occurrence could still collide with, and cut with the bound "at every
    index, at most one occurrence per distinct free position remains usable".
    """
    occs = sorted(set(occs))
    if not occs:
        return 0
    m = len(occs[0])
    keys = sorted({(j, o[j]) for o in occs for j in range(m)})
    bit = {k: 1 << i for i, k in enumerate(keys)}
    masks = [sum(bit[(j, o[j])] for j in range(m)) for o in occs]
    level_masks = [sum(v for (j, _), v in bit.items() if j == lvl) for lvl in range(m)]
    total = len(masks)
    suffix = [0] * (total + 1)
    for i in range(total - 1, -1, -1):
        suffix[i] = suffix[i + 1] | masks[i]

    memo: dict[tuple[int, int], int] = {}

    def bound(i: int, used: int) -> int:
        free = [0] * m
        for mk in masks[i:]:
            if not mk & used:
                for lvl in range(m):
                    free[lvl] |= mk & level_masks[lvl]
        return min(bin(f).count("1") for f in free)

    def solve(i: int, used: int) -> int:
        while i < total and masks[i] & used:
            i += 1
        if i == total:
            return 0
        used &= suffix[i]
        key = (i, used)
        if key in memo:
            return memo[key]
        take = 1 + solve(i + 1, used | masks[i])
        res = take
        if bound(i + 1, used) > take:
            res = max(take, solve(i + 1, used))
        memo[key] = res
        return res

    return solve(0, 0)


def oracle_support(seq: Sequence | Seq[str], p: Pattern) -> int:
    return oracle_max_nonoverlapping(oracle_all_occurrences(seq, p))
