"""Regret minimization on edge-weighted arenas.

Regret-minimizing winning strategies never let the player's utility exceed
``B = 2 * M * |S|``.  Tracking the accumulated utility (up to ``B``) in the
positions therefore turns the arena into a target-weighted one of
pseudo-polynomial size, which :mod:`regretgames.regret_twa` solves.

An edge whose accumulated utility would pass ``B`` leads to an *overflow*
node ``(s', INF)``: a dead end outside every target set.  Reaching it loses
for the player, exactly like an unbounded play does for a bounded
strategy.  Simply dropping such edges would be unsound: an opponent
position whose expensive edges vanished could look forced into a cheap
one.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arena import Arena, GameGraph, Player
from .extnat import INF
from .regret_twa import RegretReport, regret_indexed, witness_from_product
from .strategy import FiniteMemoryStrategy

OVERFLOW = "overflow"


def strategy_bound(arena: Arena) -> int:
    """``B = 2 * M * |S|`` with ``M`` the largest weight of either player."""
    return 2 * arena.max_weight() * len(arena.ids)


@dataclass(frozen=True)
class UtilityGraph:
    """Target-weighted product over ``(position, accumulated utility)``.

    Labels are ``(position_id, u)`` with ``u <= bound``, or ``(position_id, INF)``
    for overflow nodes.  ``graph.target_weight[player]`` holds ``u`` on
    target copies.
    """

    graph: GameGraph
    arena: Arena
    player: Player
    bound: int

    def __len__(self):
        return len(self.graph)

    @property
    def labels(self):
        return self.graph.labels

    def overflow_nodes(self) -> list:
        return [lab for lab in self.graph.labels if lab[1] == INF]


def build_utility_graph(arena: Arena, bound: int, player: Player = Player.P1) -> UtilityGraph:
    """Reachable product from ``(s0, 0)``."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    g = arena.graph
    p = int(player)
    start = (g.initial, 0)
    index = {start: 0}
    nodes = [start]
    succ: list[list[int]] = []
    i = 0
    while i < len(nodes):
        s, u = nodes[i]
        row = []
        if u != INF:
            for k, t in enumerate(g.succ[s]):
                nu = u + g.weights[p][s][k]
                key = (t, nu if nu <= bound else INF)
                j = index.get(key)
                if j is None:
                    j = index[key] = len(nodes)
                    nodes.append(key)
                row.append(j)
        succ.append(row)
        i += 1
    other = 3 - p
    is_t = [bool(g.targets[p][s]) and u != INF for s, u in nodes]
    tw = [u if is_t[k] else None for k, (s, u) in enumerate(nodes)]
    wts = [[tw[j] if is_t[j] else 0 for j in row] for row in succ]
    graph = GameGraph(
        [(g.labels[s], u) for s, u in nodes],
        [g.owner[s] for s, _ in nodes],
        succ,
        0,
        {p: wts, other: [[0] * len(row) for row in succ]},
        {p: is_t, other: [False] * len(nodes)},
        {p: tw, other: None},
    )
    return UtilityGraph(graph, arena, Player(p), bound)


def _memory(label):
    (pos, u), b = label
    return OVERFLOW if u == INF else (u, b)


def _extend_past_overflow(arena: Arena, player: Player, strat: FiniteMemoryStrategy, entry: list[str]):
    """Add smallest-successor moves for every position reachable after an overflow."""
    moves = dict(strat.moves)
    updates = dict(strat.updates)
    seen = set()
    stack = list(entry)
    while stack:
        s = stack.pop()
        if s in seen:
            continue
        seen.add(s)
        succ = arena.successors(s)
        if arena.owner(s) == player:
            moves[(OVERFLOW, s)] = succ[0] if succ else None
        for t in succ:
            updates[(OVERFLOW, s, t)] = OVERFLOW
            stack.append(t)
    return FiniteMemoryStrategy(
        player, strat.initial, moves, updates, "accumulated utility (capped) and best alternative seen so far"
    )


def regret(arena: Arena, player: Player = Player.P1, bound: int | None = None) -> RegretReport:
    """Regret of ``player`` in an edge-weighted arena.

    The witness's memory is ``(accumulated utility, best alternative)``, or
    ``"overflow"`` once the utility exceeded the bound, after which it
    plays the smallest successor.
    """
    player = Player(player)
    B = strategy_bound(arena) if bound is None else bound
    ug = build_utility_graph(arena, B, player)
    value, h, sol = regret_indexed(ug.graph, player)
    witness = witness_from_product(h, sol.choice, _memory, lambda label: label[0])
    overflow = [pos for pos, u in ug.overflow_nodes()]
    witness = _extend_past_overflow(arena, player, witness, overflow)
    return RegretReport(player, value, witness, value != INF, len(h))
