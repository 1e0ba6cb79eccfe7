"""Maximal co-occurrence rule mining for a fixed antecedent.

The main loop keeps frequent patterns on a LIFO stack.  Popping ``q`` scores
each candidate ``q . y``; frequent ones are pushed, and ``q`` is maximal when
none of them is frequent.  Rules ``p -> r`` are read off the maximal
patterns ``p . r`` with non-empty ``r``.
"""
from __future__ import annotations

import warnings
from fractions import Fraction
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable

import numpy as np

from . import _kernels
from .candgen import Strategy, frequent_items, frequent_pairs
from .errors import ParameterError
from .matcher import oracle_max_nonoverlapping
from .prep import PrepResult, check_mincf, exact, no_filt, sdb_filt
from .seqdb import GapConstraint, IndexedDatabase, Item, Pattern, SequenceDatabase


@dataclass(frozen=True)
class Rule:
    antecedent: Pattern
    consequent: tuple[Item, ...]
    support: int
    confidence: float

    @property
    def pattern(self) -> Pattern:
        return self.antecedent.extend(*self.consequent)

    def __str__(self) -> str:
        return f"{''.join(self.antecedent.items)}->{''.join(self.consequent)}"


@dataclass
class Counters:
    filtered_sequences: int = 0
    kept_sequences: int = 0
    filtered_positions: int = 0
    kept_positions: int = 0
    all_items: int = 0
    frequent_items: int = 0
    bet_pairs: int = 0
    candidates_generated: int = 0
    candidates_pruned_by_bet: int = 0
    candidates_not_pruned: int = 0
    support_calls: int = 0
    support_position_mass: int = 0

    def as_dict(self) -> dict[str, int]:
        return asdict(self)


@dataclass(frozen=True)
class MiningReport:
    antecedent: Pattern
    mincf: Fraction | None
    minsup: Fraction
    sup_p: int
    rules: tuple[Rule, ...]
    maximal_patterns: tuple[tuple[Pattern, int], ...]
    cor_count: int
    counters: Counters = field(default_factory=Counters)
    antecedent_is_maximal: bool = False
    zero_support: bool = False

    @property
    def mcor_count(self) -> int:
        return len(self.rules)

    def rule_set(self) -> set[tuple[tuple[Item, ...], int]]:
        return {(r.consequent, r.support) for r in self.rules}


class SupportCounter:
    """Database support over a fixed working database, optionally split across threads."""

    def __init__(self, db: IndexedDatabase, gap: GapConstraint, jobs: int = 1):
        self.db = db
        self.a, self.b = gap.a, gap.b
        self.calls = 0
        self.mass = 0
        self._k = _kernels.kernels
        jobs = max(1, int(jobs))
        if jobs > 1 and len(db) > 1:
            bounds = np.linspace(0, len(db), min(jobs, len(db)) + 1).astype(int)
            self._chunks = [db.offsets[lo:hi] for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
            self._pool = ThreadPoolExecutor(len(self._chunks))
        else:
            self._chunks = None
            self._pool = None

    def __call__(self, pat: np.ndarray) -> int:
        self.calls += 1
        self.mass += self.db.total_length
        if len(self.db) == 0:
            return 0
        if self._pool is None:
            return int(self._k.db_support(self.db.positions, self.db.offsets, pat, self.a, self.b))
        futs = [self._pool.submit(self._k.db_support, self.db.positions, ch, pat, self.a, self.b)
                for ch in self._chunks]
        return int(sum(f.result() for f in futs))

    def close(self):
        if self._pool is not None:
            self._pool.shutdown()


def _as_indexed(db: SequenceDatabase | IndexedDatabase) -> IndexedDatabase:
    return db if isinstance(db, IndexedDatabase) else IndexedDatabase.build(db)


def _explore(work: IndexedDatabase, root: tuple[int, ...], root_sup: int, minsup: Fraction,
             strategy: Strategy, f1: tuple[int, ...], f2: set[tuple[int, int]],
             alphabet: tuple[int, ...], screening: bool, gap: GapConstraint,
             counters: Counters, jobs: int):
    """Run the stack loop from ``root``; returns (all frequent patterns, maximal patterns)."""
    support = SupportCounter(work, gap, jobs)
    frequent: list[tuple[tuple[int, ...], int]] = []
    maximal: list[tuple[tuple[int, ...], int]] = []
    stack = [(root, root_sup)]
    try:
        while stack:
            q, sup_q = stack.pop()
            frequent.append((q, sup_q))
            if strategy is Strategy.AET:
                cands = alphabet
            elif strategy is Strategy.FET:
                cands = f1
            else:
                last = q[-1]
                cands = tuple(y for y in f1 if (last, y) in f2)
                counters.candidates_pruned_by_bet += len(f1) - len(cands)
            counters.candidates_generated += len(f1) if strategy is Strategy.BET else len(cands)
            counters.candidates_not_pruned += len(cands)
            has_frequent_child = False
            for y in cands:
                r = q + (y,)
                sup_r = support(np.asarray(r, dtype=np.int64))
                if sup_r >= minsup:
                    stack.append((r, sup_r))
                    has_frequent_child = True
            if screening and not has_frequent_child:
                maximal.append((q, sup_q))
    finally:
        support.close()
        counters.support_calls += support.calls
        counters.support_position_mass += support.mass
    if not screening:
        seen = {q for q, _ in frequent}
        maximal = [(q, s) for q, s in frequent if not any(q + (y,) in seen for y in alphabet)]
    return frequent, maximal


def _decode(db: IndexedDatabase, codes: Iterable[int]) -> tuple[Item, ...]:
    return tuple(db.alphabet[c] for c in codes)


def _prepare(idx: IndexedDatabase, p: Pattern, strategy: Strategy, minsup: Fraction,
             prep: PrepResult, counters: Counters):
    work = prep.shrunk
    counters.filtered_sequences = prep.filtered_sequences
    counters.kept_sequences = prep.kept_sequences
    counters.filtered_positions = prep.filtered_positions_count
    counters.kept_positions = prep.kept_positions_count
    counters.all_items = len(idx.alphabet)
    f1 = frequent_items(work, minsup)
    counters.frequent_items = len(f1)
    f1_codes = tuple(idx.code[y] for y in f1.items)
    f2_codes: set[tuple[int, int]] = set()
    if strategy is Strategy.BET:
        f2 = frequent_pairs(work, f1, p.gap, minsup)
        counters.bet_pairs = len(f2)
        f2_codes = {(idx.code[x], idx.code[y]) for x, y in f2.pairs}
    return work, f1_codes, f2_codes


def mine_mcor(db: SequenceDatabase | IndexedDatabase, p: Pattern, mincf: float,
              strategy: Strategy | str = Strategy.BET, filtering: bool = True,
              screening: bool = True, jobs: int = 1) -> MiningReport:
    """Discover every maximal co-occurrence rule with antecedent ``p``.

    ``filtering``, ``strategy`` and ``screening`` only change the amount of
    work (see :class:`Counters`); the rules are the same for every setting.
    """
    mincf = check_mincf(mincf)
    strategy = Strategy(strategy)
    idx = _as_indexed(db)
    counters = Counters()
    prep = (sdb_filt if filtering else no_filt)(idx, p, mincf)
    counters.support_calls += 1
    counters.support_position_mass += idx.total_length
    pat = idx.encode(p.items)
    if prep.sup_p == 0 or pat is None:
        counters.filtered_sequences = prep.filtered_sequences
        counters.kept_sequences = prep.kept_sequences
        counters.filtered_positions = prep.filtered_positions_count
        counters.all_items = len(idx.alphabet)
        return MiningReport(p, mincf, Fraction(0), 0, (), (), 0, counters, False, True)

    minsup = prep.minsup
    work, f1, f2 = _prepare(idx, p, strategy, minsup, prep, counters)
    alphabet = tuple(range(len(idx.alphabet)))
    root = tuple(int(c) for c in pat)
    frequent, maximal = _explore(work, root, prep.sup_p, minsup, strategy, f1, f2,
                                 alphabet, screening, p.gap, counters, jobs)

    m = len(p)
    maximal_patterns = sorted(
        ((Pattern(_decode(idx, q), p.gap), s) for q, s in maximal), key=lambda t: t[0].items)
    rules = sorted(
        (Rule(p, _decode(idx, q[m:]), s, s / prep.sup_p) for q, s in maximal if len(q) > m),
        key=lambda r: r.consequent)
    for r in rules:
        assert mincf <= Fraction(r.support, prep.sup_p) <= 1, r
    return MiningReport(
        antecedent=p, mincf=mincf, minsup=minsup, sup_p=prep.sup_p, rules=tuple(rules),
        maximal_patterns=tuple(maximal_patterns), cor_count=len(frequent) - 1,
        counters=counters, antecedent_is_maximal=(maximal == [(root, prep.sup_p)]),
    )


def mine_cop(db: SequenceDatabase | IndexedDatabase, p: Pattern, minsup: float,
             strategy: Strategy | str = Strategy.BET, filtering: bool = True,
             jobs: int = 1) -> list[tuple[Pattern, int]]:
    """All frequent patterns having ``p`` as prefix (``p`` included when frequent)."""
    minsup = exact(minsup)
    if not minsup > 0:
        raise ParameterError(f"minsup must be positive, got {minsup!r}")
    strategy = Strategy(strategy)
    idx = _as_indexed(db)
    pat = idx.encode(p.items)
    if pat is None:
        return []
    prep = (sdb_filt if filtering else no_filt)(idx, p, 1)
    if prep.sup_p < minsup:
        return []
    counters = Counters()
    work, f1, f2 = _prepare(idx, p, strategy, minsup, prep, counters)
    frequent, _ = _explore(work, tuple(int(c) for c in pat), prep.sup_p, minsup, strategy, f1, f2,
                           tuple(range(len(idx.alphabet))), True, p.gap, counters, jobs)
    return sorted(((Pattern(_decode(idx, q), p.gap), s) for q, s in frequent),
                  key=lambda t: t[0].items)


# -- brute-force reference ----------------------------------------------------

@dataclass(frozen=True)
class OracleResult:
    sup_p: int
    minsup: Fraction
    cors: dict[tuple[Item, ...], int]
    mcors: dict[tuple[Item, ...], int]
    truncated: bool


def oracle_frequent(db: SequenceDatabase, prefix: tuple[Item, ...], gap: GapConstraint,
                    minsup, max_len: int) -> tuple[dict[tuple[Item, ...], int], bool]:
    """Exhaustively score every pattern extending ``prefix`` up to ``max_len`` items.

    Supports are exact maximum nonoverlapping counts over all occurrences.
    A branch is abandoned only when no pattern below it can have any
    occurrence set reaching ``minsup``: every occurrence of an extension
    restricts to an occurrence of its prefix, so the number of distinct
    positions available at any index of the prefix bounds all extensions.
    An empty ``prefix`` enumerates from every single item.
    """
    minsup = exact(minsup)
    seqs = [tuple(s) for s in db]
    alphabet = db.alphabet
    a, b = gap.a, gap.b
    found: dict[tuple[Item, ...], int] = {}
    truncated = False

    def extend(occs, item):
        out = []
        for s, olist in zip(seqs, occs):
            n = len(s)
            nxt = []
            for occ in olist:
                last = occ[-1]
                for pos in range(last + a + 1, min(last + b + 1, n) + 1):
                    if s[pos - 1] == item:
                        nxt.append(occ + (pos,))
            out.append(nxt)
        return out

    def upper(occs, m):
        total = 0
        for olist in occs:
            if olist:
                total += min(len({o[j] for o in olist}) for j in range(m))
        return total

    def visit(pattern, occs):
        nonlocal truncated
        m = len(pattern)
        sup = sum(oracle_max_nonoverlapping(olist) for olist in occs)
        if sup >= minsup:
            found[pattern] = sup
            if m >= max_len:
                truncated = True
        if m >= max_len or upper(occs, m) < minsup:
            return
        for y in alphabet:
            nocc = extend(occs, y)
            if any(nocc):
                visit(pattern + (y,), nocc)

    starts = [prefix[:1]] if prefix else [(y,) for y in alphabet]
    for start in starts:
        occs = [[(i,) for i in range(1, len(s) + 1) if s[i - 1] == start[0]] for s in seqs]
        for item in prefix[1:]:
            occs = extend(occs, item)
        visit(tuple(prefix) if prefix else start, occs)
    return found, truncated


def oracle_mine_mcor(db: SequenceDatabase, p: Pattern, mincf: float, max_len: int) -> OracleResult:
    """Brute-force CoRs and MCoRs of antecedent ``p`` (patterns up to ``max_len`` items)."""
    mincf = check_mincf(mincf)
    seqs_sup = 0
    if len(db):
        from .matcher import oracle_support
        seqs_sup = sum(oracle_support(s, p) for s in db)
    if seqs_sup == 0:
        return OracleResult(0, Fraction(0), {}, {}, False)
    minsup = seqs_sup * mincf
    found, truncated = oracle_frequent(db, p.items, p.gap, minsup, max_len)
    if truncated:
        warnings.warn(f"oracle enumeration reached max_len={max_len}; results may be truncated",
                      RuntimeWarning, stacklevel=2)
    m = len(p)
    cors = {q[m:]: s for q, s in found.items() if len(q) > m}
    maximal = {q: s for q, s in found.items()
               if not any(q + (y,) in found for y in db.alphabet)}
    mcors = {q[m:]: s for q, s in maximal.items() if len(q) > m}
    return OracleResult(seqs_sup, minsup, cors, mcors, truncated)


def oracle_all_rules(db: SequenceDatabase, gap: GapConstraint, minsup, mincf, max_len: int):
    """Frequent patterns over every antecedent and the strong rules between them.

    A rule ``x -> y`` is reported when ``x`` and ``x . y`` are both frequent
    and ``sup(x . y) / sup(x) >= mincf``.
    """
    mincf = check_mincf(mincf)
    found, truncated = oracle_frequent(db, (), gap, minsup, max_len)
    if truncated:
        warnings.warn(f"oracle enumeration reached max_len={max_len}", RuntimeWarning, stacklevel=2)
    rules = {}
    for q, sq in found.items():
        for cut in range(1, len(q)):
            x = q[:cut]
            if x in found and Fraction(sq, found[x]) >= mincf:
                rules[(x, q[cut:])] = sq / found[x]
    return found, rules
