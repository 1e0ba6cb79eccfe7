"""Next-item recommendation from mined rules, scored on a held-out split."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import ParameterError
from .matcher import db_support
from .miner import MiningReport
from .seqdb import GapConstraint, IndexedDatabase, Item, Pattern, SequenceDatabase

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RecommendationScore:
    """TP and FN are support sums over next items; FP counts wrong recommendations.

    A metric whose denominator is zero is ``None``.
    """

    tp: int
    fp: int
    fn: int
    precision: float | None
    recall: float | None
    f1: float | None
    next_item_supports: dict[Item, int]

    @property
    def defined(self) -> bool:
        return self.precision is not None and self.recall is not None and self.f1 is not None


def split_db(db: SequenceDatabase, train_fraction: float = 0.8) -> tuple[SequenceDatabase, SequenceDatabase]:
    """First ``floor(k * train_fraction)`` sequences train, the rest test."""
    try:
        frac = Fraction(repr(float(train_fraction)))
    except (TypeError, ValueError):
        raise ParameterError(f"train fraction must be a number, got {train_fraction!r}") from None
    if not 0 < frac < 1:
        raise ParameterError(f"train fraction must lie in (0, 1), got {train_fraction!r}")
    cut = math.floor(len(db) * frac)
    if len(db) and cut == 0:
        log.warning("training set is empty (%d sequences, fraction %s)", len(db), train_fraction)
    return db[:cut], db[cut:]


def recommend_items(report: MiningReport | Iterable) -> list[Item]:
    """First item of every rule consequent, deduplicated, in alphabet order."""
    rules = report.rules if isinstance(report, MiningReport) else report
    return sorted({r.consequent[0] for r in rules})


def score_recommendations(recommended: Iterable[Item], test: SequenceDatabase | IndexedDatabase,
                          p: Pattern, gap: GapConstraint | None = None) -> RecommendationScore:
    gap = p.gap if gap is None else gap
    idx = test if isinstance(test, IndexedDatabase) else IndexedDatabase.build(test)
    base = Pattern(p.items, gap)
    sups = {y: db_support(idx, base.extend(y)) for y in idx.alphabet}
    return score_from_supports(recommended, sups)


def score_from_supports(recommended: Iterable[Item], supports: dict[Item, int]) -> RecommendationScore:
    rec = set(recommended)
    tp = sum(s for y, s in supports.items() if y in rec)
    fn = sum(s for y, s in supports.items() if y not in rec and s > 0)
    fp = sum(1 for y in rec if supports.get(y, 0) == 0)
    precision = tp / (tp + fp) if tp + fp else None
    recall = tp / (tp + fn) if tp + fn else None
    f1 = None
    if precision is not None and recall is not None and precision + recall > 0:
        f1 = 2 * precision * recall / (precision + recall)
    return RecommendationScore(tp, fp, fn, precision, recall, f1,
                               {y: s for y, s in sorted(supports.items()) if s > 0})
