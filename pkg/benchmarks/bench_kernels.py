"""Compare the numba kernels with the plain-Python fallback.

Times one database-wide support count and one full mining run per backend on a
random database, and checks that both backends return the same numbers.

    python benchmarks/bench_kernels.py --sequences 200 --length 300
"""
import argparse
import random
import time

from mcor import _kernels
from mcor.seqdb import GapConstraint, IndexedDatabase, Pattern, SequenceDatabase
from mcor.miner import mine_mcor


def random_db(k, n, alphabet, seed):
    rng = random.Random(seed)
    return SequenceDatabase.from_strings(["".join(rng.choice(alphabet) for _ in range(n)) for _ in range(k)])


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sequences", type=int, default=200)
    ap.add_argument("--length", type=int, default=300)
    ap.add_argument("--alphabet", default="abcdefgh")
    ap.add_argument("--gap", default="0,3")
    ap.add_argument("--mincf", type=float, default=0.2)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    gap = GapConstraint.parse(args.gap)
    idx = IndexedDatabase.build(random_db(args.sequences, args.length, args.alphabet, args.seed))
    p = Pattern(tuple(args.alphabet[:2]), gap)
    codes = idx.encode(p.items + p.items)
    print(f"database: {len(idx)} sequences, {idx.total_length} positions, |alphabet|={len(idx.alphabet)}")

    backends = {"python": _kernels.python_kernels}
    if _kernels.jit_kernels is not None:
        backends["numba"] = _kernels.jit_kernels
        # compile outside the timed region
        _kernels.jit_kernels.db_support(idx.positions, idx.offsets, codes, gap.a, gap.b)

    saved = _kernels.kernels
    results = {}
    try:
        for name, k in backends.items():
            _kernels.kernels = k
            t_sup, sup = best_of(lambda: k.db_support(idx.positions, idx.offsets, codes, gap.a, gap.b),
                                 args.repeat)
            t_mine, rep = best_of(lambda: mine_mcor(idx, p, args.mincf), args.repeat)
            results[name] = (t_sup, t_mine, int(sup), rep.rule_set())
            print(f"{name:>6}: support {t_sup * 1e3:9.2f} ms   mine {t_mine * 1e3:9.2f} ms   "
                  f"sup={int(sup)} rules={len(rep.rules)} calls={rep.counters.support_calls}")
    finally:
        _kernels.kernels = saved

    if len(results) == 2:
        py, nb = results["python"], results["numba"]
        assert py[2:] == nb[2:], "backends disagree"
        print(f"speedup: support x{py[0] / nb[0]:.1f}, mine x{py[1] / nb[1]:.1f}")


if __name__ == "__main__":
    main()
