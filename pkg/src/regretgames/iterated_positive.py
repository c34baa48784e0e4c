"""Iterated regret minimization on arenas whose weights are all positive.

With every weight at least 1, strategies that matter at any rank keep both
players' utilities below ``B = b * M`` where ``b = 6 * M**3 * |S|``.  The
game is therefore equivalent to its unfolding into the tree of plays whose
accumulated weights (for both players) stay within ``B``, and the tree
algorithm applies.  That tree is exponential in ``B``: the unfolding
refuses to grow beyond a node cap and reports the size it would need.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .arena import Arena, Edge, Player, Position
from .errors import ArenaError, ResourceLimitError
from .iterated_tree import IteratedReport, iterated_regret as iterated_tree_regret
from .strategy import FiniteMemoryStrategy

OVERFLOW = "overflow"
DEFAULT_CAP = 10**6
_COUNT_WORK_LIMIT = 2 * 10**8


def positivity_violations(arena: Arena) -> list[str]:
    return [
        f"edge {e.src!r} -> {e.dst!r}: weights ({e.w1}, {e.w2}) must both be at least 1"
        for e in arena.edges
        if e.w1 < 1 or e.w2 < 1
    ]


def _require_positive(arena: Arena):
    arena.check()
    bad = positivity_violations(arena)
    if bad:
        raise ArenaError("arena is not strictly positive: " + "; ".join(bad), bad)


def bounds(arena: Arena) -> tuple[int, int]:
    """``(b, B)`` with ``b = 6 * M**3 * |S|`` and ``B = b * M``."""
    _require_positive(arena)
    m = arena.max_weight()
    b = 6 * m**3 * len(arena.ids)
    return b, b * m


@dataclass(frozen=True)
class UnfoldConfig:
    """``cap`` limits the unfolded node count; ``bound`` overrides ``B`` (testing aid)."""

    cap: int = DEFAULT_CAP
    bound: Optional[int] = None

    def __post_init__(self):
        if self.cap < 1:
            raise ValueError("cap must be at least 1")
        if self.bound is not None and self.bound < 0:
            raise ValueError("bound must be nonnegative")


def count_plays(arena: Arena, bound: int, limit: Optional[int] = None) -> int:
    """Number of plays whose accumulated weights both stay within ``bound``.

    Counted by dynamic programming over ``(position, u1, u2)``, sweeping
    ``u1`` downwards (weights are positive, so counts only depend on larger
    utilities).  Exact below ``2**53`` and a close float estimate above.
    When that grid is too large to sweep, plays are enumerated instead and
    the count stops once ``limit`` is passed (returning ``limit + 1``).
    """
    _require_positive(arena)
    g = arena.graph
    n = len(g)
    width = bound + 1
    if (g.n_edges + n) * width * width <= _COUNT_WORK_LIMIT:
        m = max(g.max_weight(1), g.max_weight(2), 1)
        rows: dict = {}
        edges = [
            (s, t, g.weights[1][s][k], g.weights[2][s][k]) for s in range(n) for k, t in enumerate(g.succ[s])
        ]
        for u1 in range(bound, -1, -1):
            cur = np.ones((n, width))
            for s, t, w1, w2 in edges:
                if u1 + w1 <= bound and w2 <= bound:
                    cur[s, : width - w2] += rows[u1 + w1][t, w2:]
            rows[u1] = cur
            rows.pop(u1 + m + 1, None)
        return int(rows[0][g.initial, 0])
    count = 0
    stack = [(g.initial, 0, 0)]
    while stack:
        s, u1, u2 = stack.pop()
        count += 1
        if limit is not None and count > limit:
            return count
        for k, t in enumerate(g.succ[s]):
            a, b = u1 + g.weights[1][s][k], u2 + g.weights[2][s][k]
            if a <= bound and b <= bound:
                stack.append((t, a, b))
    return count


@dataclass(frozen=True)
class Unfolding:
    """Tree of bounded plays.

    Node ids are ``n`` followed by a zero-padded creation index, so id
    order is creation order; ``play[node]`` is the play a node stands for
    and ``position[node]`` its last position.
    """

    tree: Arena
    play: dict
    position: dict
    bound: int

    def __len__(self):
        return len(self.play)


def unfold(arena: Arena, bound: int, config: UnfoldConfig = UnfoldConfig()) -> Unfolding:
    _require_positive(arena)
    required = count_plays(arena, bound, config.cap)
    if required > config.cap:
        raise ResourceLimitError(
            f"unfolding to bound {bound} needs {'more than ' + str(config.cap) if required == config.cap + 1 else required}"
            f" nodes, above the cap of {config.cap}",
            config.cap,
            required,
        )
    width = max(6, len(str(required)))
    g = arena.graph
    labels = g.labels
    positions, edges = [], []
    play, last = {}, {}
    root = f"n{0:0{width}d}"
    counter = 1
    # breadth-first so that siblings get consecutive ids in successor order
    queue = [(root, (labels[g.initial],), g.initial, 0, 0)]
    head = 0
    while head < len(queue):
        node, pl, s, u1, u2 = queue[head]
        head += 1
        play[node] = pl
        last[node] = labels[s]
        pos = arena.position(labels[s])
        positions.append(Position(node, pos.owner, pos.target1, pos.target2))
        for k, t in enumerate(g.succ[s]):
            w1, w2 = g.weights[1][s][k], g.weights[2][s][k]
            if u1 + w1 <= bound and u2 + w2 <= bound:
                child = f"n{counter:0{width}d}"
                counter += 1
                edges.append(Edge(node, child, w1, w2))
                queue.append((child, pl + (labels[t],), t, u1 + w1, u2 + w2))
    tree = Arena(tuple(positions), root, tuple(edges), f"{arena.name or 'arena'}-unfolded-{bound}")
    return Unfolding(tree, play, last, bound)


@dataclass(frozen=True)
class PositiveReport:
    """Tree report on the unfolding, plus the witnesses mapped back to the arena."""

    bound: int
    unfolding: Unfolding
    tree_report: IteratedReport
    witnesses: dict

    @property
    def regrets(self):
        return self.tree_report.regrets

    @property
    def star(self) -> int:
        return self.tree_report.star

    @property
    def final(self):
        return self.tree_report.final


def map_back(arena: Arena, unf: Unfolding, tree_strategy, player: Player) -> FiniteMemoryStrategy:
    """Finite-memory arena strategy that replays a strategy of the unfolding.

    The memory is the unfolding node of the current play; once the play
    leaves the unfolding (a utility passed the bound) the memory becomes
    ``"overflow"`` and the smallest successor is played.
    """
    player = Player(player)
    tree = unf.tree
    moves, updates = {}, {}
    overflow_entries = []
    for node in tree.ids:
        s = unf.position[node]
        child_of = {unf.position[c]: c for c in tree.successors(node)}
        if arena.owner(s) == player:
            c = tree_strategy.choices.get(node)
            if c is not None:
                moves[(node, s)] = unf.position[c]
            else:
                succ = arena.successors(s)
                moves[(node, s)] = succ[0] if succ else None
        for t in arena.successors(s):
            nxt = child_of.get(t)
            if nxt is None:
                updates[(node, s, t)] = OVERFLOW
                overflow_entries.append(t)
            else:
                updates[(node, s, t)] = nxt
    seen = set()
    stack = list(overflow_entries)
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
    return FiniteMemoryStrategy(player, tree.initial, moves, updates, "current play (unfolding node) or overflow")


def iterated_regret(arena: Arena, config: UnfoldConfig = UnfoldConfig()) -> PositiveReport:
    """Iterated regrets of a strictly positive arena, rank by rank."""
    bound = bounds(arena)[1] if config.bound is None else config.bound
    unf = unfold(arena, bound, config)
    rep = iterated_tree_regret(unf.tree)
    witnesses = {p: map_back(arena, unf, rep.witnesses[p], Player(p)) for p in (1, 2)}
    return PositiveReport(bound, unf, rep, witnesses)
