"""Configuration matrices over the mining variants, one result record per run."""
from __future__ import annotations

import enum
import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .candgen import Strategy
from .errors import MiningError, ParameterError
from .miner import mine_cop, mine_mcor, oracle_mine_mcor
from .prep import exact
from .seqdb import Format, GapConstraint, IndexedDatabase, Pattern, SequenceDatabase, parse_database


class Variant(str, enum.Enum):
    MCOR_MINER = "mcor-miner"
    MCOR_NOFILT = "mcor-nofilt"
    MCOR_AET = "mcor-aet"
    MCOR_FET = "mcor-fet"
    MCOR_NOSCR = "mcor-noscr"
    COP_MINER = "cop-miner"
    ORACLE = "oracle"

    @classmethod
    def parse(cls, name: str) -> "Variant":
        try:
            return cls(name.strip().lower())
        except ValueError:
            names = ", ".join(v.value for v in cls)
            raise ParameterError(f"unknown variant {name!r} (expected one of: {names})") from None


# variant -> (strategy, filtering, screening)
FLAGS = {
    Variant.MCOR_MINER: (Strategy.BET, True, True),
    Variant.MCOR_NOFILT: (Strategy.BET, False, True),
    Variant.MCOR_AET: (Strategy.AET, True, True),
    Variant.MCOR_FET: (Strategy.FET, True, True),
    Variant.MCOR_NOSCR: (Strategy.BET, True, False),
    Variant.COP_MINER: (Strategy.BET, True, True),
}


@dataclass(frozen=True)
class RunConfig:
    prefix: tuple[str, ...]
    gap: GapConstraint
    variant: Variant = Variant.MCOR_MINER
    mincf: Any = None
    minsup: Any = None
    path: str | None = None
    fmt: Format = Format.CHARS
    delimiter: str = ","
    database: SequenceDatabase | None = field(default=None, compare=False, repr=False)
    max_len: int | None = None
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.parse(self.variant) if isinstance(self.variant, str)
                           else self.variant)
        wants_minsup = self.variant is Variant.COP_MINER
        if wants_minsup and (self.minsup is None or self.mincf is not None):
            raise ParameterError("cop-miner takes minsup (and no mincf)")
        if not wants_minsup and (self.mincf is None or self.minsup is not None):
            raise ParameterError(f"{self.variant.value} takes mincf (and no minsup)")
        if self.variant is Variant.ORACLE and not self.max_len:
            raise ParameterError("the oracle variant needs max_len")
        if self.path is None and self.database is None:
            raise ParameterError("a run needs a dataset path or an in-memory database")

    def echo(self) -> dict[str, Any]:
        return {
            "dataset": self.path,
            "format": Format(self.fmt).value,
            "prefix": list(self.prefix),
            "gap": [self.gap.a, self.gap.b],
            "variant": self.variant.value,
            "mincf": None if self.mincf is None else exact(self.mincf),
            "minsup": None if self.minsup is None else exact(self.minsup),
        }


@dataclass
class RunResult:
    config: dict[str, Any]
    cor_count: int | None = None
    mcor_count: int | None = None
    sup_p: int | None = None
    counters: dict[str, int] = field(default_factory=dict)
    wall_time_ms: float = 0.0
    rules: list[dict[str, Any]] = field(default_factory=list)
    error: str | None = None

    def record(self) -> dict[str, Any]:
        return {
            "type": "run",
            "config": self.config,
            "cor_count": self.cor_count,
            "mcor_count": self.mcor_count,
            "sup_p": self.sup_p,
            "counters": self.counters,
            "wall_time_ms": self.wall_time_ms,
            "rules": self.rules,
            "error": self.error,
        }


def _load(cfg: RunConfig, cache: dict) -> SequenceDatabase:
    if cfg.database is not None:
        return cfg.database
    key = (cfg.path, Format(cfg.fmt), cfg.delimiter)
    if key not in cache:
        cache[key] = parse_database(Path(cfg.path).read_bytes(), cfg.fmt, cfg.delimiter)
    return cache[key]


def _rule_row(consequent, support, confidence) -> dict[str, Any]:
    return {"consequent": list(consequent), "support": support, "confidence": confidence}


def run_one(cfg: RunConfig, cache: dict | None = None) -> RunResult:
    cache = {} if cache is None else cache
    res = RunResult(cfg.echo())
    try:
        db = _load(cfg, cache)
        p = Pattern(cfg.prefix, cfg.gap)
        t0 = time.perf_counter()
        if cfg.variant is Variant.ORACLE:
            out = oracle_mine_mcor(db, p, cfg.mincf, cfg.max_len)
            res.wall_time_ms = (time.perf_counter() - t0) * 1e3
            res.sup_p, res.cor_count, res.mcor_count = out.sup_p, len(out.cors), len(out.mcors)
            res.rules = [_rule_row(c, s, s / out.sup_p) for c, s in sorted(out.mcors.items())]
        elif cfg.variant is Variant.COP_MINER:
            idx = IndexedDatabase.build(db)
            pats = mine_cop(idx, p, cfg.minsup, jobs=cfg.jobs)
            res.wall_time_ms = (time.perf_counter() - t0) * 1e3
            m = len(p)
            sup_p = next((s for q, s in pats if len(q) == m), None)
            res.sup_p = sup_p
            res.cor_count = sum(1 for q, _ in pats if len(q) > m)
            res.rules = [_rule_row(q.items[m:], s, s / sup_p) for q, s in pats if len(q) > m]
        else:
            strategy, filtering, screening = FLAGS[cfg.variant]
            idx = IndexedDatabase.build(db)
            rep = mine_mcor(idx, p, cfg.mincf, strategy, filtering, screening, jobs=cfg.jobs)
            res.wall_time_ms = (time.perf_counter() - t0) * 1e3
            res.sup_p, res.cor_count, res.mcor_count = rep.sup_p, rep.cor_count, rep.mcor_count
            res.counters = rep.counters.as_dict()
            res.rules = [_rule_row(r.consequent, r.support, r.confidence) for r in rep.rules]
    except (MiningError, OSError) as exc:
        res.error = f"{type(exc).__name__}: {exc}"
    return res


def run_matrix(configs: Iterable[RunConfig], concurrent: bool = False) -> list[RunResult]:
    """One result per config, in input order.  Errors are captured per run."""
    configs = list(configs)
    cache: dict = {}
    if not concurrent:
        return [run_one(c, cache) for c in configs]
    for c in configs:  # load datasets once before fanning out
        try:
            _load(c, cache)
        except (MiningError, OSError):
            pass
    with ThreadPoolExecutor() as pool:
        return list(pool.map(lambda c: run_one(c, cache), configs))


def sweep(base: dict[str, Any], gaps: Iterable[GapConstraint] = (), mincfs: Iterable = (),
          minsups: Iterable = (), variants: Iterable[Variant | str] = (Variant.MCOR_MINER,)) -> list[RunConfig]:
    """Cartesian product of variants x gaps x thresholds sharing the ``base`` fields."""
    out = []
    gaps = list(gaps) or [base["gap"]]
    base = {k: v for k, v in base.items() if k != "gap"}
    for variant, gap in itertools.product(variants, gaps):
        variant = Variant.parse(variant) if isinstance(variant, str) else variant
        if variant is Variant.COP_MINER:
            out += [RunConfig(gap=gap, variant=variant, minsup=s, **base) for s in minsups]
        else:
            out += [RunConfig(gap=gap, variant=variant, mincf=c, **base) for c in mincfs]
    return out
