"""Randomized cross-checks of DBI and the miner against the brute-force oracle."""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from typing import Iterator

from .candgen import Strategy
from .matcher import dbi_support, oracle_all_occurrences, oracle_max_nonoverlapping
from .miner import mine_mcor, oracle_mine_mcor
from .seqdb import GapConstraint, IndexedDatabase, Pattern, SequenceDatabase, build_index

ALPHABET = "abcd"


@dataclass(frozen=True)
class MatchInstance:
    sequence: str
    pattern: Pattern


@dataclass(frozen=True)
class MineInstance:
    db: SequenceDatabase
    prefix: Pattern
    mincf: float

    def describe(self) -> str:
        rows = ",".join("".join(s.items) for s in self.db)
        return f"db=[{rows}] prefix={self.prefix} mincf={self.mincf}"


def random_match_instance(rng: random.Random, max_n: int = 20, max_m: int = 4,
                          max_b: int = 3) -> MatchInstance:
    al = ALPHABET[: rng.choice((2, 3, 4))]
    s = "".join(rng.choice(al) for _ in range(rng.randint(0, max_n)))
    b = rng.randint(0, max_b)
    a = rng.randint(0, b)
    items = tuple(rng.choice(al) for _ in range(rng.randint(1, max_m)))
    return MatchInstance(s, Pattern(items, GapConstraint(a, b)))


def random_mine_instance(rng: random.Random, max_k: int = 5, max_n: int = 15,
                         max_b: int = 2) -> MineInstance:
    al = ALPHABET[: rng.randint(2, 4)]
    rows = ["".join(rng.choice(al) for _ in range(rng.randint(1, max_n)))
            for _ in range(rng.randint(1, max_k))]
    b = rng.randint(0, max_b)
    a = rng.randint(0, b)
    # usually take the prefix from the data so that most instances have support
    src = rng.choice(rows)
    m = rng.randint(1, 2)
    if rng.random() < 0.8 and len(src) >= m:
        start = rng.randrange(len(src) - m + 1)
        items = tuple(src[start:start + m])
    else:
        items = tuple(rng.choice(al) for _ in range(m))
    return MineInstance(SequenceDatabase.from_strings(rows), Pattern(items, GapConstraint(a, b)),
                        rng.choice((0.5, 0.7)))


def match_instances(trials: int, seed: int, **sizes) -> Iterator[MatchInstance]:
    rng = random.Random(seed)
    for _ in range(trials):
        yield random_match_instance(rng, **sizes)


def mine_instances(trials: int, seed: int, **sizes) -> Iterator[MineInstance]:
    rng = random.Random(seed)
    for _ in range(trials):
        yield random_mine_instance(rng, **sizes)


def check_match(inst: MatchInstance) -> str | None:
    """Counterexample text, or None when DBI agrees with the oracle."""
    got = dbi_support(build_index(inst.sequence), inst.pattern)
    want = oracle_max_nonoverlapping(oracle_all_occurrences(inst.sequence, inst.pattern))
    if got != want:
        return f"s={inst.sequence} p={inst.pattern} dbi={got} oracle={want}"
    return None


def oracle_max_len(db: SequenceDatabase) -> int:
    """One past the longest sequence: no pattern that long can occur, so nothing is cut off."""
    return max((len(s) for s in db), default=0) + 1


def check_mine(inst: MineInstance, all_variants: bool = True) -> str | None:
    with warnings.catch_warnings():
        warnings.simplefilter("error", RuntimeWarning)
        want = oracle_mine_mcor(inst.db, inst.prefix, inst.mincf, oracle_max_len(inst.db))
    idx = IndexedDatabase.build(inst.db)
    got = mine_mcor(idx, inst.prefix, inst.mincf)
    rules = {r.consequent: r.support for r in got.rules}
    if rules != want.mcors or got.cor_count != len(want.cors) or got.sup_p != want.sup_p:
        return (f"{inst.describe()} miner={sorted(rules.items())} cor={got.cor_count} "
                f"oracle={sorted(want.mcors.items())} cor={len(want.cors)}")
    if not all_variants:
        return None
    for strategy in Strategy:
        for filtering in (True, False):
            for screening in (True, False):
                rep = mine_mcor(idx, inst.prefix, inst.mincf, strategy, filtering, screening)
                alt = {r.consequent: r.support for r in rep.rules}
                c = rep.counters
                if alt != rules or rep.cor_count != got.cor_count:
                    return f"{inst.describe()} variant {strategy.value}/{filtering}/{screening} differs"
                if c.candidates_pruned_by_bet + c.candidates_not_pruned != c.candidates_generated:
                    return f"{inst.describe()} BET counters do not add up: {c}"
    return None
