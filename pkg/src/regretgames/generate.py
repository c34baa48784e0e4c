"""Seeded random arenas for property tests and the ``gen`` command.

Every generator takes an explicit seed and draws from its own
``random.Random`` instance, so output depends on nothing else.  Position
ids are zero-padded (``p00``, ``p01``, ...) so that id order is creation
order.
"""
from __future__ import annotations

import random

from .arena import Arena, Edge, Player, Position


def _ids(n: int) -> list[str]:
    width = max(2, len(str(n - 1)))
    return [f"p{i:0{width}d}" for i in range(n)]


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_arena(
    seed,
    positions: int = 6,
    max_weight: int = 3,
    *,
    min_weight: int = 0,
    target_prob: float = 0.3,
    max_out: int = 3,
) -> Arena:
    """Arbitrary edge-weighted arena (self-loops and dead ends allowed)."""
    rng = _rng(seed)
    ids = _ids(positions)
    pos = tuple(
        Position(s, Player(rng.randint(1, 2)), rng.random() < target_prob, rng.random() < target_prob) for s in ids
    )
    edges = []
    for s in ids:
        k = rng.randint(0, max_out) if rng.random() < 0.9 else 0
        for t in sorted(rng.sample(ids, min(k, len(ids)))):
            edges.append(Edge(s, t, rng.randint(min_weight, max_weight), rng.randint(min_weight, max_weight)))
    return Arena(pos, ids[0], tuple(edges), f"random-{positions}")


def random_positive_arena(seed, positions: int = 3, max_weight: int = 2, **kw) -> Arena:
    """Edge-weighted arena with every weight of both players at least 1."""
    return random_arena(seed, positions, max_weight, min_weight=1, **kw)


def random_twa(seed, positions: int = 6, max_weight: int = 3, max_targets: int = 3, max_out: int = 3) -> Arena:
    """Arena satisfying the target-weighted property for both players.

    At most ``max_targets`` targets per player; each target draws one
    weight per player and every edge into it carries that weight.
    """
    rng = _rng(seed)
    ids = _ids(positions)
    t1 = set(rng.sample(ids, rng.randint(0, min(max_targets, positions))))
    t2 = set(rng.sample(ids, rng.randint(0, min(max_targets, positions))))
    mu1 = {t: rng.randint(0, max_weight) for t in sorted(t1)}
    mu2 = {t: rng.randint(0, max_weight) for t in sorted(t2)}
    pos = tuple(Position(s, Player(rng.randint(1, 2)), s in t1, s in t2) for s in ids)
    edges = []
    for s in ids:
        k = rng.randint(0, max_out) if rng.random() < 0.9 else 0
        for t in sorted(rng.sample(ids, min(k, len(ids)))):
            edges.append(Edge(s, t, mu1.get(t, 0), mu2.get(t, 0)))
    return Arena(pos, ids[0], tuple(edges), f"random-twa-{positions}")


def random_tree(
    seed, leaves: int = 6, max_weight: int = 5, *, target_prob: float = 0.85, inner_target_prob: float = 0.05
) -> Arena:
    """Edge-weighted tree with exactly ``leaves`` leaves (internal nodes have 2 or 3 children)."""
    rng = _rng(seed)
    if leaves < 1:
        raise ValueError("a tree needs at least one leaf")
    children: dict[int, list[int]] = {0: []}
    frontier = [0]
    count = 1
    while len(frontier) < leaves:
        node = frontier.pop(rng.randrange(len(frontier)))
        k = min(rng.choice((2, 2, 3)), leaves - len(frontier))
        for _ in range(k):
            children[node].append(count)
            children[count] = []
            frontier.append(count)
            count += 1
    ids = _ids(count)
    pos = []
    for i in range(count):
        leaf = not children[i]
        prob = target_prob if leaf else inner_target_prob
        pos.append(Position(ids[i], Player(rng.randint(1, 2)), rng.random() < prob, rng.random() < prob))
    edges = [
        Edge(ids[a], ids[b], rng.randint(0, max_weight), rng.randint(0, max_weight))
        for a in range(count)
        for b in children[a]
    ]
    return Arena(tuple(pos), ids[0], tuple(edges), f"random-tree-{leaves}")


def large_twa_graph(seed, positions: int, edges: int, targets: int, max_weight: int = 10):
    """Indexed target-weighted game for scale tests (built without an :class:`Arena`).

    Every position gets at least one successor; the remaining edges land
    on uniformly random sources.  Parallel edges are allowed.  Target
    weights are shared by both players.
    """
    import numpy as np

    from .arena import GameGraph

    if edges < positions:
        raise ValueError("need at least one edge per position")
    rng = np.random.default_rng(seed)
    src = np.concatenate([np.arange(positions), rng.integers(0, positions, edges - positions)])
    dst = rng.integers(0, positions, edges)
    order = np.argsort(src, kind="stable")
    src, dst = src[order], dst[order]
    bounds = np.searchsorted(src, np.arange(positions + 1))
    dst_list = dst.tolist()
    succ = [dst_list[bounds[s]:bounds[s + 1]] for s in range(positions)]
    is_t = np.zeros(positions, dtype=bool)
    is_t[rng.choice(positions, targets, replace=False)] = True
    weight = rng.integers(0, max_weight + 1, positions)
    tw = [int(w) if t else None for w, t in zip(weight.tolist(), is_t.tolist())]
    targets_list = is_t.tolist()
    wts = [[tw[t] if targets_list[t] else 0 for t in row] for row in succ]
    owner = (rng.integers(1, 3, positions)).tolist()
    return GameGraph(
        range(positions), owner, succ, 0, {1: wts, 2: wts}, {1: targets_list, 2: targets_list}, {1: tw, 2: tw}
    )
