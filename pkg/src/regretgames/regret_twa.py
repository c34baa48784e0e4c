"""Regret minimization on target-weighted arenas.

The regret of a strategy only depends, along each play, on the play's own
utility and on the cheapest value the player could have secured by
deviating somewhere earlier while the opponent cooperates (the *best
alternative* of the play).  The best alternative takes at most
``|C_i| + 1`` values, so pairing every position with the best alternative
seen so far gives a finite product in which regret becomes an ordinary
min-max value with target weights ``mu(s) - min(mu(s), b)``.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

from .arena import Arena, GameGraph, Player, TargetWeightedArena, as_graph
from .extnat import INF, ExtNat, monus
from .minmax import solve as solve_minmax
from .strategy import FiniteMemoryStrategy


def _best_indexed(g: GameGraph, p: int) -> list:
    """Cheapest utility from every node with both players cooperating (Dijkstra on reversed edges)."""
    n = len(g)
    dist = [INF] * n
    rev = [[] for _ in range(n)]
    for s, succ in enumerate(g.succ):
        ws = g.weights[p][s]
        for k, t in enumerate(succ):
            if ws[k] != INF:
                rev[t].append((s, ws[k]))
    heap = []
    for s in range(n):
        if g.targets[p][s]:
            dist[s] = 0
            heap.append((0, s))
    heapq.heapify(heap)
    while heap:
        d, t = heapq.heappop(heap)
        if d > dist[t]:
            continue
        for s, w in rev[t]:
            if g.targets[p][s]:
                continue  # utility stops at the first target
            nd = d + w
            if nd < dist[s]:
                dist[s] = nd
                heapq.heappush(heap, (nd, s))
    return dist


def _edge_alternatives(g: GameGraph, p: int, best: list) -> list[list]:
    """``alt[s][k]``: best alternative of taking the k-th edge out of ``s``.

    An alternative successor ``s''`` is worth the weight of the edge into it
    plus ``best(s'')``; for target-weighted arenas that is the target weight
    when ``s''`` is a target.
    """
    out = []
    for s, succ in enumerate(g.succ):
        if g.owner[s] != p:
            out.append([INF] * len(succ))
            continue
        vals = [g.weights[p][s][k] + best[t] for k, t in enumerate(succ)]
        m1 = m2 = INF
        arg = -1
        for k, v in enumerate(vals):
            if v < m1:
                m1, m2, arg = v, m1, k
            elif v < m2:
                m2 = v
        out.append([m2 if k == arg else m1 for k in range(len(succ))])
    return out


def best_values(game, player: Player) -> dict:
    """``best(s)`` for every position: the least utility reachable from ``s`` if both players cooperate."""
    g = as_graph(game)
    best = _best_indexed(g, int(player))
    return {lab: best[i] for i, lab in enumerate(g.labels)}


def edge_best_alternative(game, player: Player, src, dst) -> ExtNat:
    """Best value ``player`` could have reached by leaving ``src`` through another edge."""
    g = as_graph(game)
    p = int(player)
    s = g.index[src]
    t = g.index[dst]
    if t not in g.succ[s]:
        raise ValueError(f"no edge {src!r} -> {dst!r}")
    alt = _edge_alternatives(g, p, _best_indexed(g, p))
    return alt[s][g.succ[s].index(t)]


@dataclass(frozen=True)
class BestAlternativeGraph:
    """Product of a target-weighted game with the best alternative seen so far.

    ``graph`` has labels ``(source_label, b)``; its target weights for
    ``player`` are the reduced weights ``mu(s) - min(mu(s), b)``.
    ``source`` is the indexed source game and ``origin[k]`` the source
    index of product node ``k``.  ``parent[k]`` is ``(node, edge)`` through
    which the breadth-first construction first reached ``k`` (``None`` for
    the root), so ``path(k)`` replays one source play leading to it.
    """

    graph: GameGraph
    source: GameGraph
    player: Player
    origin: tuple
    parent: tuple = ()

    def __len__(self):
        return len(self.graph)

    def b(self, k: int) -> ExtNat:
        return self.graph.labels[k][1]

    def path(self, k: int) -> list[int]:
        """Source indices of the construction path from the initial node to ``k``."""
        out = [self.origin[k]]
        while self.parent[k] is not None:
            k = self.parent[k][0]
            out.append(self.origin[k])
        return out[::-1]


def build_best_alternative_graph(game, player: Player = Player.P1) -> BestAlternativeGraph:
    """Reachable part of the product from ``(s0, INF)``; unreachable pairs are never created."""
    src = as_graph(game)
    p = int(player)
    tw = src.target_weight[p]
    if tw is None:
        raise TypeError("the best-alternative product needs a target-weighted game")
    alt = _edge_alternatives(src, p, _best_indexed(src, p))
    start = (src.initial, INF)
    index = {start: 0}
    nodes = [start]
    parent: list = [None]
    succ: list[list[int]] = []
    i = 0
    while i < len(nodes):
        s, b = nodes[i]
        row = []
        for k, t in enumerate(src.succ[s]):
            nb = b if src.owner[s] != p else min(b, alt[s][k])
            key = (t, nb)
            j = index.get(key)
            if j is None:
                j = index[key] = len(nodes)
                nodes.append(key)
                parent.append((i, k))
            row.append(j)
        succ.append(row)
        i += 1
    other = 3 - p
    is_t = [src.targets[p][s] for s, _ in nodes]
    nu = [monus(tw[s], b) if src.targets[p][s] else None for s, b in nodes]
    wts = [[nu[j] if is_t[j] else 0 for j in row] for row in succ]
    graph = GameGraph(
        [(src.labels[s], b) for s, b in nodes],
        [src.owner[s] for s, _ in nodes],
        succ,
        0,
        {p: wts, other: [[0] * len(row) for row in succ]},
        {p: is_t, other: [False] * len(nodes)},
        {p: nu, other: None},
    )
    return BestAlternativeGraph(graph, src, Player(p), tuple(s for s, _ in nodes), tuple(parent))


@dataclass(frozen=True)
class RegretReport:
    """Regret of one player together with a strategy achieving it.

    ``winning`` is false exactly when the regret is ``INF``; the witness is
    then an arbitrary (deterministic) legal strategy.
    """

    player: Player
    regret: ExtNat
    witness: object
    winning: bool
    product_size: int = 0


def regret_indexed(game, player: Player):
    """Solve on an indexed game; returns ``(regret, H, minmax solution)``."""
    h = build_best_alternative_graph(game, player)
    sol = solve_minmax(h.graph, player)
    return sol.value, h, sol


def witness_from_product(h: BestAlternativeGraph, choice, memory_of=None, position_of=None) -> FiniteMemoryStrategy:
    """Turn a memoryless product strategy into a finite-memory source strategy.

    The memory is the product node's extra component (by default the best
    alternative ``b``); ``memory_of`` maps a product label to a custom
    memory value and ``position_of`` a source label to the position id
    (needed when the source is itself a product).  The tables cover every
    reachable product node.
    """
    g = h.graph
    mem = memory_of or (lambda label: label[1])
    pos = position_of or (lambda label: label)
    src = [pos(lab) for lab in h.source.labels]
    moves = {}
    updates = {}
    for k, label in enumerate(g.labels):
        s = src[h.origin[k]]
        m = mem(label)
        if g.owner[k] == int(h.player):
            c = choice[k]
            moves[(m, s)] = None if c is None else src[h.origin[c]]
        for j in g.succ[k]:
            updates[(m, s, src[h.origin[j]])] = mem(g.labels[j])
    return FiniteMemoryStrategy(h.player, mem(g.labels[0]), moves, updates, "best alternative seen so far")


def regret(game, player: Player = Player.P1) -> RegretReport:
    """Regret of ``player`` in a target-weighted arena, with a finite-memory witness.

    The witness's memory is the best alternative seen so far.
    """
    if isinstance(game, Arena):
        game = TargetWeightedArena.from_arena(game, (Player(player),))
    value, h, sol = regret_indexed(game, player)
    witness = witness_from_product(h, sol.choice)
    return RegretReport(Player(player), value, witness, value != INF, len(h))
