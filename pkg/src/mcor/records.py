"""Line-delimited JSON records with a fixed field order.

Reals are written with four decimals (``0.7500``), which is still valid JSON.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .miner import MiningReport, Rule


def _value(v: Any) -> str:
    if v is None or isinstance(v, bool):
        return json.dumps(v)
    if isinstance(v, (float, Fraction)):
        return f"{float(v):.4f}"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_value(x) for x in v) + "]"
    return json.dumps(str(v), ensure_ascii=False)


def dumps(record: dict[str, Any]) -> str:
    return _value(record)


def rule_record(rule: Rule) -> dict[str, Any]:
    return {
        "type": "rule",
        "antecedent": list(rule.antecedent.items),
        "consequent": list(rule.consequent),
        "support": rule.support,
        "confidence": rule.confidence,
    }


def stat_record(name: str, value: Any) -> dict[str, Any]:
    return {"type": "stat", "name": name, "value": value}


def report_records(report: MiningReport) -> list[dict[str, Any]]:
    out = [rule_record(r) for r in report.rules]
    out += [
        stat_record("sup_p", report.sup_p),
        stat_record("minsup", report.minsup),
        stat_record("cor_count", report.cor_count),
        stat_record("mcor_count", report.mcor_count),
        stat_record("antecedent_is_maximal", report.antecedent_is_maximal),
        stat_record("zero_support", report.zero_support),
    ]
    out += [stat_record(k, v) for k, v in report.counters.as_dict().items()]
    return out


def metric_record(score) -> dict[str, Any]:
    return {
        "type": "metric",
        "tp": score.tp,
        "fp": score.fp,
        "fn": score.fn,
        "precision": score.precision,
        "recall": score.recall,
        "f1": score.f1,
        "defined": score.defined,
    }
