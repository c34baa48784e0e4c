"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--positions N] [--leaves L] [--repeat R]

Times ``can_achieve`` (attractor kernel) on a large random target-weighted
game, a single tree kernel pass, and a full iterated-regret run on a large
random tree, once per available backend.  Exits nonzero if the backends
disagree.
"""
import argparse
import statistics
import time

import numpy as np

from regretgames import generate, iterated_tree, kernels, minmax


def _time(fn, repeat):
    runs = []
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        runs.append(time.perf_counter() - t)
    return statistics.median(runs), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--positions", type=int, default=100_000)
    ap.add_argument("--leaves", type=int, default=3_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    ns = ap.parse_args(argv)

    game = generate.large_twa_graph(ns.seed, ns.positions, 3 * ns.positions, max(1, ns.positions // 100))
    game.pred_csr  # build the shared index once, outside the timings
    tree = generate.random_tree(ns.seed, ns.leaves, 5)
    leaf_tree = iterated_tree.as_leaf_tree(tree)
    indexed = iterated_tree.IndexedTree(leaf_tree)

    def one_pass():
        return indexed.run_pass(np.ones(len(indexed), dtype=np.uint8))["minmax1"][0]

    rows, answers = [], {}
    for name in kernels.available():
        kernels.use(name)
        t_attr, attr = _time(lambda: minmax.can_achieve(game, 1, 5), ns.repeat)
        t_pass, first = _time(one_pass, ns.repeat)
        t_tree, rep = _time(lambda: iterated_tree.iterated_regret(leaf_tree), ns.repeat)
        answers[name] = (attr.updates, attr.rank.tolist(), int(first), rep.regrets, rep.survivors)
        rows.append((name, t_attr, t_pass, t_tree))

    print(f"attractor: {ns.positions} positions, {3 * ns.positions} edges; tree: {len(leaf_tree.arena.ids)} nodes")
    print(f"{'backend':<8} {'attractor (s)':>14} {'tree pass (s)':>14} {'iterated tree (s)':>18}")
    for name, a, p, t in rows:
        print(f"{name:<8} {a:>14.4f} {p:>14.4f} {t:>18.4f}")
    if len(rows) == 2:
        (_, a0, p0, t0), (_, a1, p1, t1) = sorted(rows, key=lambda r: r[0])
        print(f"speedup native/python: attractor x{a1 / a0:.1f}, tree pass x{p1 / p0:.1f}, iterated tree x{t1 / t0:.1f}")
    if len(set(map(repr, answers.values()))) > 1:
        raise SystemExit("backends disagree")
    print("backends agree")


if __name__ == "__main__":
    main()
