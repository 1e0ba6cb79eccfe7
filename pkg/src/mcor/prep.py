"""Preparation stage: shrink the database to sequences containing the antecedent."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParameterError
from .matcher import seq_supports
from .seqdb import IndexedDatabase, Pattern


@dataclass(frozen=True)
class PrepResult:
    minsup: Fraction
    shrunk: IndexedDatabase
    sup_p: int
    filtered_sequences: int
    kept_sequences: int
    filtered_positions_count: int
    kept_positions_count: int


def exact(value) -> Fraction:
    """Exact rational for a threshold; floats are read through their shortest repr (0.7 -> 7/10)."""
    try:
        if isinstance(value, float):
            if math.isnan(value) or math.isinf(value):
                raise ValueError
            return Fraction(repr(value))
        return Fraction(str(value).strip()) if isinstance(value, str) else Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParameterError(f"expected a finite number, got {value!r}") from None


def check_mincf(mincf) -> Fraction:
    value = exact(mincf)
    if not 0 < value <= 1:
        raise ParameterError(f"mincf must lie in (0, 1], got {mincf!r}")
    return value


def sdb_filt(db: IndexedDatabase, p: Pattern, mincf: float) -> PrepResult:
    """Drop sequences where ``p`` has zero support; derive ``minsup = sup(p, D) * mincf``.

    ``minsup`` is kept as an exact rational so that ``support >= minsup``
    holds exactly when ``confidence >= mincf``.
    """
    mincf = check_mincf(mincf)
    sups = seq_supports(db, p)
    keep = np.flatnonzero(sups > 0)
    sup_p = int(sups.sum())
    kept_len = int(db.lengths[keep].sum()) if len(keep) else 0
    return PrepResult(
        minsup=sup_p * mincf,
        shrunk=db.subset(keep),
        sup_p=sup_p,
        filtered_sequences=len(db) - len(keep),
        kept_sequences=len(keep),
        filtered_positions_count=db.total_length - kept_len,
        kept_positions_count=kept_len,
    )


def no_filt(db: IndexedDatabase, p: Pattern, mincf: float) -> PrepResult:
    """Same bookkeeping as :func:`sdb_filt` but every sequence is kept."""
    mincf = check_mincf(mincf)
    sup_p = int(seq_supports(db, p).sum())
    return PrepResult(sup_p * mincf, db, sup_p, 0, len(db), 0, db.total_length)
