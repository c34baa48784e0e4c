"""Min-max values of target-weighted games.

``can_achieve`` decides whether a player can force a visit to a target of
weight at most ``K`` before any heavier target, with a counter-based
attractor (linear in positions plus edges).  ``minmax_value`` runs it as a
binary search over the distinct target weights, and ``minmax_strategy``
reads a memoryless witness off the attractor ranks.

Every function accepts a :class:`~regretgames.arena.TargetWeightedArena`
or an already-indexed :class:`~regretgames.arena.GameGraph` whose
``target_weight`` tables are set (the product constructions of the regret
solvers produce those directly).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .arena import GameGraph, Player, as_graph
from .extnat import INF, ExtNat
from .strategy import MemorylessStrategy


@dataclass(frozen=True)
class Attractor:
    """Outcome of one fixpoint computation.

    ``rank[s]`` is the round at which ``s`` entered the winning set (0 for
    the admissible targets), or -1 when it never does.  ``updates`` counts
    winning-set insertions plus successor-counter decrements.
    """

    won: bool
    rank: np.ndarray
    updates: int

    def winning_indices(self) -> list[int]:
        return [int(s) for s in np.flatnonzero(self.rank >= 0)]


def _target_weights(g: GameGraph, player: int) -> list:
    tw = g.target_weight[player]
    if tw is None:
        raise TypeError("min-max solving needs target weights (use a TargetWeightedArena)")
    return tw


def can_achieve(game, player: Player, K: int) -> Attractor:
    """Can ``player`` force a target of weight <= ``K`` (no heavier target first)?"""
    if K == INF or K < 0:
        raise ValueError("K must be a finite nonnegative integer")
    g = as_graph(game)
    p = int(player)
    tw = _target_weights(g, p)
    n = len(g)
    is_t = g.targets[p]
    base = np.zeros(n, dtype=np.uint8)
    blocked = np.zeros(n, dtype=np.uint8)
    for s in range(n):
        if is_t[s]:
            if tw[s] <= K:
                base[s] = 1
            else:
                blocked[s] = 1
    own = np.fromiter((o == p for o in g.owner), dtype=np.uint8, count=n)
    outdeg = np.fromiter((len(x) for x in g.succ), dtype=np.int64, count=n)
    ptr, idx = g.pred_csr
    rank, updates = kernels.attractor(ptr, idx, outdeg, own, base, blocked)
    # starting inside the target set is an immediate (weight 0) win
    won = bool(rank[g.initial] >= 0) or bool(is_t[g.initial] and tw[g.initial] != INF)
    return Attractor(won, rank, updates)


def _candidate_weights(g: GameGraph, p: int) -> list[int]:
    tw = _target_weights(g, p)
    return sorted({w for s, w in enumerate(tw) if g.targets[p][s] and w is not None and w != INF})


def minmax_value(game, player: Player) -> ExtNat:
    """``min`` over own strategies of ``max`` over the opponent's of the utility."""
    g = as_graph(game)
    p = int(player)
    if g.targets[p][g.initial]:
        return 0 if _target_weights(g, p)[g.initial] != INF else INF
    ks = _candidate_weights(g, p)
    if not ks or not can_achieve(g, player, ks[-1]).won:
        return INF
    lo, hi = 0, len(ks) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if can_achieve(g, player, ks[mid]).won:
            hi = mid
        else:
            lo = mid + 1
    return ks[lo]


@dataclass(frozen=True)
class MinmaxSolution:
    """Value plus a memoryless witness, as node indices and as a strategy object."""

    value: ExtNat
    winning: bool
    choice: tuple  # choice[s] = chosen successor index for owned s, else None
    graph: GameGraph

    def strategy(self, player: Player) -> MemorylessStrategy:
        labels = self.graph.labels
        return MemorylessStrategy(
            Player(player),
            {labels[s]: (None if c is None else labels[c]) for s, c in enumerate(self.choice) if self.graph.owner[s] == int(player)},
        )


def solve(game, player: Player) -> MinmaxSolution:
    """Value and witness in one go.

    Inside the winning set each owned position moves to a successor that
    entered the set strictly earlier, preferring the earliest round and
    then the successor listed first (smallest id).  Elsewhere, and for
    every position when the value is ``INF``, the first successor is used.
    """
    g = as_graph(game)
    p = int(player)
    value = minmax_value(g, player)
    rank: Optional[np.ndarray] = None
    if value != INF:
        rank = can_achieve(g, player, value).rank
    choice = []
    for s, succ in enumerate(g.succ):
        if g.owner[s] != p:
            choice.append(None)
            continue
        if not succ:
            choice.append(None)
            continue
        pick = succ[0]
        if rank is not None and rank[s] > 0:
            best = None
            for t in succ:
                r = rank[t]
                if 0 <= r < rank[s] and (best is None or r < best):
                    best = r
                    pick = t
        choice.append(pick)
    return MinmaxSolution(value, value != INF, tuple(choice), g)


def minmax_strategy(game, player: Player) -> MemorylessStrategy:
    return solve(game, player).strategy(player)
