"""``mcor`` command line: mine / cop / eval / bench / oracle-check.

Records go to stdout as one JSON object per line; diagnostics go to stderr.
Exit status: 0 success, 1 input/IO error, 2 parameter error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .bench import FLAGS, RunConfig, Variant, run_matrix, sweep
from .errors import FormatError, InputError, MiningError, ParameterError
from .evaluation import recommend_items, score_recommendations, split_db
from .miner import Rule, mine_cop, mine_mcor, oracle_mine_mcor
from .oracle_check import check_match, check_mine, match_instances, mine_instances
from .records import dumps, metric_record, report_records, rule_record, stat_record
from .seqdb import Format, GapConstraint, IndexedDatabase, Pattern, parse_database, parse_items

log = logging.getLogger("mcor")

FORMATS = [f.value for f in Format]
VARIANTS = [v.value for v in Variant]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParameterError(message)


def _gap(text: str) -> GapConstraint:
    try:
        return GapConstraint.parse(text)
    except ParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _data_args(p: argparse.ArgumentParser, threshold: str = "mincf"):
    p.add_argument("--input", required=True, help="sequence file")
    p.add_argument("--format", choices=FORMATS, default="chars")
    p.add_argument("--delimiter", default=",", help="token separator for --format tokens")
    p.add_argument("--prefix", required=True, help="antecedent, written like a line of the input")
    p.add_argument("--jobs", type=int, default=1, help="threads for per-sequence support counting")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="mcor", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("mine", help="maximal co-occurrence rules of one antecedent")
    _data_args(m)
    m.add_argument("--gap", required=True, type=_gap, help="A,B")
    m.add_argument("--mincf", help="minimum confidence in (0,1]")
    m.add_argument("--minsup", help="minimum support (cop-miner only)")
    m.add_argument("--variant", choices=VARIANTS, default="mcor-miner")
    m.add_argument("--max-len", type=int, help="pattern length bound (required for the oracle)")

    c = sub.add_parser("cop", help="all frequent patterns with the given prefix")
    _data_args(c)
    c.add_argument("--gap", required=True, type=_gap)
    c.add_argument("--minsup", required=True)

    e = sub.add_parser("eval", help="mine on the head of the file, score next-item recommendations on the tail")
    _data_args(e)
    e.add_argument("--gap", required=True, type=_gap)
    e.add_argument("--mincf")
    e.add_argument("--minsup", help="cop-miner only")
    e.add_argument("--variant", choices=VARIANTS, default="mcor-miner")
    e.add_argument("--train-fraction", type=float, default=0.8)
    e.add_argument("--max-len", type=int)

    b = sub.add_parser("bench", help="run a variant x gap x threshold matrix")
    _data_args(b)
    b.add_argument("--gap", dest="gaps", action="append", type=_gap, required=True,
                   help="repeatable")
    b.add_argument("--mincf", dest="mincfs", action="append", default=[], help="repeatable")
    b.add_argument("--minsup", dest="minsups", action="append", default=[], help="repeatable")
    b.add_argument("--variant", dest="variants", action="append", choices=VARIANTS,
                   help="repeatable; default mcor-miner")
    b.add_argument("--max-len", type=int)
    b.add_argument("--concurrent", action="store_true", help="run configs in parallel (timings not comparable)")

    o = sub.add_parser("oracle-check", help="randomized DBI and miner checks against brute force")
    o.add_argument("--trials", type=int, default=1000)
    o.add_argument("--mining-trials", type=int, help="default: trials / 5")
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--max-n", type=int, default=20)
    o.add_argument("--max-m", type=int, default=4)
    o.add_argument("--max-b", type=int, default=3)
    return ap


def _emit(records, out):
    for r in records:
        out.write(dumps(r) + "\n")


def _load(args):
    try:
        raw = Path(args.input).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc}") from exc
    db = parse_database(raw, args.format, args.delimiter)
    prefix = parse_items(args.prefix, args.format, args.delimiter)
    return db, prefix


def _threshold(args, variant: Variant):
    if variant is Variant.COP_MINER:
        if args.minsup is None:
            raise ParameterError("cop-miner needs --minsup")
        return None, args.minsup
    if args.mincf is None:
        raise ParameterError(f"{variant.value} needs --mincf")
    if variant is Variant.ORACLE and not args.max_len:
        raise ParameterError("the oracle variant needs --max-len")
    return args.mincf, None


def _mine_rules(db, p: Pattern, variant: Variant, mincf, minsup, args) -> tuple[list[Rule], list]:
    """Rules plus extra stat records for one variant run."""
    if variant is Variant.ORACLE:
        res = oracle_mine_mcor(db, p, mincf, args.max_len)
        rules = [Rule(p, c, s, s / res.sup_p) for c, s in sorted(res.mcors.items())]
        stats = [stat_record("sup_p", res.sup_p), stat_record("minsup", res.minsup),
                 stat_record("cor_count", len(res.cors)), stat_record("mcor_count", len(res.mcors)),
                 stat_record("truncated", res.truncated)]
        return rules, stats
    idx = IndexedDatabase.build(db)
    if variant is Variant.COP_MINER:
        pats = mine_cop(idx, p, minsup, jobs=args.jobs)
        m = len(p)
        sup_p = next((s for q, s in pats if len(q) == m), 0)
        rules = [Rule(p, q.items[m:], s, s / sup_p) for q, s in pats if len(q) > m]
        return rules, [stat_record("sup_p", sup_p), stat_record("minsup", minsup),
                       stat_record("cor_count", len(rules))]
    strategy, filtering, screening = FLAGS[variant]
    rep = mine_mcor(idx, p, mincf, strategy, filtering, screening, jobs=args.jobs)
    if rep.zero_support:
        log.warning("antecedent %s never occurs; no rules", p)
    return list(rep.rules), report_records(rep)[len(rep.rules):]


def cmd_mine(args, out) -> int:
    variant = Variant.parse(args.variant)
    mincf, minsup = _threshold(args, variant)
    db, prefix = _load(args)
    rules, stats = _mine_rules(db, Pattern(prefix, args.gap), variant, mincf, minsup, args)
    _emit([rule_record(r) for r in rules], out)
    _emit(stats, out)
    return 0


def cmd_cop(args, out) -> int:
    args.variant, args.mincf, args.max_len = Variant.COP_MINER.value, None, None
    return cmd_mine(args, out)


def cmd_eval(args, out) -> int:
    variant = Variant.parse(args.variant)
    mincf, minsup = _threshold(args, variant)
    db, prefix = _load(args)
    train, test = split_db(db, args.train_fraction)
    if len(train) == 0:
        raise ParameterError("training set is empty")
    p = Pattern(prefix, args.gap)
    rules, _ = _mine_rules(train, p, variant, mincf, minsup, args)
    score = score_recommendations(recommend_items(rules), test, p)
    _emit([rule_record(r) for r in rules], out)
    _emit([stat_record("train_sequences", len(train)), stat_record("test_sequences", len(test)),
           stat_record("recommended", recommend_items(rules))], out)
    if not score.defined:
        log.warning("some metrics are undefined (zero denominator)")
    _emit([metric_record(score)], out)
    return 0


def cmd_bench(args, out) -> int:
    variants = args.variants or [Variant.MCOR_MINER.value]
    base = dict(prefix=parse_items(args.prefix, args.format, args.delimiter), path=args.input,
                fmt=Format(args.format), delimiter=args.delimiter, max_len=args.max_len, jobs=args.jobs)
    configs = sweep(base, args.gaps, args.mincfs, args.minsups, variants)
    if not configs:
        raise ParameterError("empty matrix: give --mincf and/or --minsup values")
    results = run_matrix(configs, concurrent=args.concurrent)
    _emit([r.record() for r in results], out)
    return 1 if any(r.error for r in results) else 0


def cmd_oracle_check(args, out) -> int:
    mining = args.trials // 5 if args.mining_trials is None else args.mining_trials
    if args.trials < 0 or mining < 0:
        raise ParameterError("trial counts must be non-negative")
    failures = 0
    for inst in match_instances(args.trials, args.seed, max_n=args.max_n, max_m=args.max_m,
                                max_b=args.max_b):
        msg = check_match(inst)
        if msg:
            failures += 1
            out.write(f"COUNTEREXAMPLE matcher {msg}\n")
    out.write(f"{args.trials} trials matcher, {failures} failures\n")
    mfail = 0
    for inst in mine_instances(mining, args.seed):
        msg = check_mine(inst)
        if msg:
            mfail += 1
            out.write(f"COUNTEREXAMPLE miner {msg}\n")
    out.write(f"{mining} trials miner, {mfail} failures\n")
    return 0 if failures + mfail == 0 else 1


COMMANDS = {
    "mine": cmd_mine,
    "cop": cmd_cop,
    "eval": cmd_eval,
    "bench": cmd_bench,
    "oracle-check": cmd_oracle_check,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except ParameterError as exc:
        print(f"mcor: error: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="mcor: %(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args, out)
    except ParameterError as exc:
        print(f"mcor: error: {exc}", file=sys.stderr)
        return 2
    except (InputError, FormatError, OSError) as exc:
        print(f"mcor: error: {exc}", file=sys.stderr)
        return 1
    except MiningError as exc:  # pragma: no cover - every subclass is handled above
        print(f"mcor: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
