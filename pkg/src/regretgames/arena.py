"""Arenas, plays and utilities.

An :class:`Arena` is a finite directed graph whose positions are owned by
one of two players.  Every edge carries a nonnegative integer weight for each
player and every position may belong to either player's target set.  All
objects are immutable; derived index structures are cached on first use.

Position ids are opaque strings.  Wherever an iteration order matters
(successor lists, tie-breaking, strategy enumeration) ids are sorted.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Mapping, Optional, Sequence

from .errors import ArenaError, StrategyError
from .extnat import INF, ExtNat

if TYPE_CHECKING:
    from .strategy import Strategy


class Player(enum.IntEnum):
    P1 = 1
    P2 = 2

    @property
    def opponent(self) -> "Player":
        return Player.P2 if self is Player.P1 else Player.P1


def opponent(player: Player) -> Player:
    return Player(player).opponent


@dataclass(frozen=True)
class Position:
    id: str
    owner: Player
    target1: bool = False
    target2: bool = False

    def is_target(self, player: Player) -> bool:
        return self.target1 if player == Player.P1 else self.target2


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    w1: int = 0
    w2: int = 0

    def weight(self, player: Player) -> int:
        return self.w1 if player == Player.P1 else self.w2


class GameGraph:
    """Integer-indexed view of an arena (or of a product built from one).

    This is the representation the solvers and kernels work on.  ``labels``
    maps indices back to whatever the node stands for: a position id for a
    plain arena, a tuple for product constructions.

    ``weights[p][s][k]`` is player ``p``'s weight on the edge from ``s`` to
    ``succ[s][k]``.  ``target_weight[p]`` is either ``None`` (edge-weighted
    semantics) or a list holding, for each node, the target weight of that
    node for player ``p`` (``None`` for non-targets).
    """

    def __init__(self, labels, owner, succ, initial, weights, targets, target_weight=None):
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.owner = list(owner)
        self.succ = [list(s) for s in succ]
        self.initial = initial
        self.weights = weights
        self.targets = targets
        self.target_weight = target_weight or {1: None, 2: None}

    def __len__(self):
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return sum(len(s) for s in self.succ)

    @cached_property
    def pred(self) -> list[list[int]]:
        pred = [[] for _ in self.labels]
        for s, succ in enumerate(self.succ):
            for t in succ:
                pred[t].append(s)
        return pred

    @cached_property
    def pred_csr(self):
        """Predecessor lists packed as ``(ptr, idx)`` arrays for the kernels."""
        import numpy as np

        n = len(self.labels)
        deg = np.fromiter((len(s) for s in self.succ), dtype=np.int64, count=n)
        dst = np.fromiter(itertools.chain.from_iterable(self.succ), dtype=np.int64, count=int(deg.sum()))
        src = np.repeat(np.arange(n, dtype=np.int64), deg)
        order = np.argsort(dst, kind="stable")
        ptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(dst, minlength=n), out=ptr[1:])
        return ptr, src[order]

    def edge_weight(self, player: int, s: int, k: int) -> ExtNat:
        return self.weights[int(player)][s][k]

    def max_weight(self, player: int) -> int:
        """Largest finite weight of ``player``: target weights for TWA views, edge weights otherwise."""
        tw = self.target_weight[int(player)]
        if tw is not None:
            return max((w for w in tw if w is not None and w != INF), default=0)
        return max((w for row in self.weights[int(player)] for w in row if w != INF), default=0)


@dataclass(frozen=True)
class Arena:
    """A finite two-player weighted game arena with one target set per player."""

    positions: tuple[Position, ...]
    initial: str
    edges: tuple[Edge, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(self.positions))
        object.__setattr__(self, "edges", tuple(self.edges))

    @classmethod
    def build(cls, positions: Iterable, edges: Iterable, initial: str, name: str = "") -> "Arena":
        """Convenience constructor from loose tuples.

        ``positions`` items are ``Position`` objects or ``(id, owner[, t1[, t2]])``
        tuples; ``edges`` items are ``Edge`` objects or ``(src, dst[, w1[, w2]])``.
        """
        pos = [p if isinstance(p, Position) else Position(p[0], Player(p[1]), *p[2:]) for p in positions]
        eds = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
        return cls(tuple(pos), initial, tuple(eds), name)

    # -- lookup ---------------------------------------------------------

    @cached_property
    def _by_id(self) -> dict[str, Position]:
        out = {}
        for p in self.positions:
            out.setdefault(p.id, p)
        return out

    @cached_property
    def ids(self) -> list[str]:
        return sorted(self._by_id)

    @cached_property
    def _succ(self) -> dict[str, list[Edge]]:
        out: dict[str, list[Edge]] = {p: [] for p in self._by_id}
        for e in self.edges:
            out.setdefault(e.src, []).append(e)
        for lst in out.values():
            lst.sort(key=lambda e: e.dst)
        return out

    @cached_property
    def _edge_map(self) -> dict[tuple[str, str], Edge]:
        return {(e.src, e.dst): e for e in self.edges}

    def position(self, pid: str) -> Position:
        try:
            return self._by_id[pid]
        except KeyError:
            raise ArenaError(f"unknown position {pid!r}") from None

    def __contains__(self, pid) -> bool:
        return pid in self._by_id

    def owner(self, pid: str) -> Player:
        return self.position(pid).owner

    def is_target(self, pid: str, player: Player) -> bool:
        return self.position(pid).is_target(player)

    def successors(self, pid: str) -> list[str]:
        return [e.dst for e in self._succ.get(pid, ())]

    def out_edges(self, pid: str) -> list[Edge]:
        return list(self._succ.get(pid, ()))

    def edge(self, src: str, dst: str) -> Optional[Edge]:
        return self._edge_map.get((src, dst))

    def weight(self, src: str, dst: str, player: Player) -> int:
        e = self._edge_map.get((src, dst))
        if e is None:
            raise ArenaError(f"no edge {src!r} -> {dst!r}")
        return e.weight(player)

    def targets(self, player: Player) -> list[str]:
        return [p for p in self.ids if self._by_id[p].is_target(player)]

    def max_weight(self, player: Optional[Player] = None) -> int:
        """``M_i`` for one player, or ``M = max(M_1, M_2)`` when ``player`` is None."""
        if player is None:
            return max(self.max_weight(Player.P1), self.max_weight(Player.P2))
        return max((e.weight(player) for e in self.edges), default=0)

    # -- validation -----------------------------------------------------

    def violations(self) -> list[str]:
        return validate(self)

    def check(self) -> "Arena":
        v = validate(self)
        if v:
            raise ArenaError("invalid arena: " + "; ".join(v), v)
        return self

    @cached_property
    def graph(self) -> GameGraph:
        """Indexed view with raw edge weights (edge-weighted semantics)."""
        self.check()
        ids = self.ids
        index = {p: i for i, p in enumerate(ids)}
        succ, w1, w2 = [], [], []
        for p in ids:
            es = self._succ[p]
            succ.append([index[e.dst] for e in es])
            w1.append([e.w1 for e in es])
            w2.append([e.w2 for e in es])
        return GameGraph(
            ids,
            [int(self._by_id[p].owner) for p in ids],
            succ,
            index[self.initial],
            {1: w1, 2: w2},
            {1: [self._by_id[p].target1 for p in ids], 2: [self._by_id[p].target2 for p in ids]},
        )

    def with_initial(self, pid: str) -> "Arena":
        """The arena ``(G, s)`` started from another position."""
        return Arena(self.positions, pid, self.edges, self.name)


def _is_weight(w) -> bool:
    return isinstance(w, int) and not isinstance(w, bool) and w >= 0


def validate(arena: Arena) -> list[str]:
    """List every structural problem of ``arena``; empty means valid."""
    out = []
    seen = set()
    for p in arena.positions:
        if not isinstance(p.id, str) or not p.id:
            out.append(f"position id {p.id!r} must be a nonempty string")
        if p.id in seen:
            out.append(f"duplicate position {p.id!r}")
        seen.add(p.id)
        if p.owner not in (Player.P1, Player.P2):
            out.append(f"position {p.id!r}: owner must be 1 or 2")
    if arena.initial not in seen:
        out.append(f"initial missing: {arena.initial!r} is not a declared position")
    pairs = set()
    for e in arena.edges:
        label = f"edge {e.src!r} -> {e.dst!r}"
        for end in (e.src, e.dst):
            if end not in seen:
                out.append(f"{label}: endpoint {end!r} is not a declared position")
        if (e.src, e.dst) in pairs:
            out.append(f"{label}: duplicate edge")
        pairs.add((e.src, e.dst))
        for name, w in (("w1", e.w1), ("w2", e.w2)):
            if not _is_weight(w):
                out.append(f"{label}: {name} must be a nonnegative integer, got {w!r}")
    return out


# ---------------------------------------------------------------------------
# target-weighted arenas


def twa_violations(arena: Arena, player: Player) -> list[str]:
    """Reasons why ``arena`` is not target-weighted for ``player``."""
    out = []
    seen: dict[str, int] = {}
    for e in arena.edges:
        w = e.weight(player)
        if not arena.is_target(e.dst, player):
            if w != 0:
                out.append(f"edge {e.src!r} -> {e.dst!r}: nonzero weight {w} for player {int(player)} into a non-target")
        elif seen.setdefault(e.dst, w) != w:
            out.append(f"target {e.dst!r}: incoming weights {seen[e.dst]} and {w} differ for player {int(player)}")
    return out


def is_twa(arena: Arena, player: Optional[Player] = None) -> bool:
    players = (Player.P1, Player.P2) if player is None else (player,)
    return all(not twa_violations(arena, p) for p in players)


@dataclass(frozen=True)
class TargetWeightedArena:
    """An arena whose weights live on targets: ``weights[i][t]`` for ``t`` in ``C_i``.

    The utility of a play is the weight of the first target it visits (zero
    when the initial position is itself a target).  Target weights may be
    ``INF`` only for the leaf trees produced by :func:`edge_tree_to_leaf_twa`.
    """

    arena: Arena
    weights1: Mapping[str, ExtNat]
    weights2: Mapping[str, ExtNat]

    @classmethod
    def from_arena(cls, arena: Arena, players: Sequence[Player] = (Player.P1, Player.P2)) -> "TargetWeightedArena":
        """Read target weights off the incoming edges; raise if the TWA property fails.

        Players not listed in ``players`` are not checked; their weights are
        taken from the first incoming edge of each target.
        """
        arena.check()
        problems = [v for p in players for v in twa_violations(arena, p)]
        if problems:
            raise ArenaError("not a target-weighted arena: " + "; ".join(problems), problems)
        maps = []
        for p in (Player.P1, Player.P2):
            m = {t: 0 for t in arena.targets(p)}
            fixed = set()
            for e in arena.edges:
                if e.dst in m and e.dst not in fixed:
                    m[e.dst] = e.weight(p)
                    fixed.add(e.dst)
            maps.append(m)
        return cls(arena, maps[0], maps[1])

    def weights(self, player: Player) -> Mapping[str, ExtNat]:
        return self.weights1 if player == Player.P1 else self.weights2

    def target_weight(self, pid: str, player: Player) -> ExtNat:
        return self.weights(player)[pid]

    @property
    def initial(self) -> str:
        return self.arena.initial

    def max_weight(self, player: Optional[Player] = None) -> int:
        if player is None:
            return max(self.max_weight(Player.P1), self.max_weight(Player.P2))
        return max((w for w in self.weights(player).values() if w != INF), default=0)

    @cached_property
    def graph(self) -> GameGraph:
        base = self.arena.graph
        tw = {}
        wts = {}
        for p in (Player.P1, Player.P2):
            m = self.weights(p)
            tw[int(p)] = [m.get(lab) if base.targets[int(p)][i] else None for i, lab in enumerate(base.labels)]
            wts[int(p)] = [[tw[int(p)][t] if tw[int(p)][t] is not None else 0 for t in succ] for succ in base.succ]
        return GameGraph(base.labels, base.owner, base.succ, base.initial, wts, base.targets, tw)


def as_graph(game) -> GameGraph:
    """GameGraph for an Arena, TargetWeightedArena or GameGraph."""
    if isinstance(game, GameGraph):
        return game
    return game.graph


# ---------------------------------------------------------------------------
# plays, utilities, outcomes


@dataclass(frozen=True)
class Play:
    """A finite play prefix.

    ``loop_start`` certifies a lasso: the infinite play is
    ``positions[:loop_start]`` followed by ``positions[loop_start:]``
    repeated forever.  ``dead_end`` marks a finite play that stopped at a
    position without successors.
    """

    positions: tuple[str, ...]
    loop_start: Optional[int] = None
    dead_end: bool = False

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(self.positions))

    def __len__(self):
        return len(self.positions)

    @property
    def last(self) -> str:
        return self.positions[-1]


def check_play(arena: Arena, play: Play, root: Optional[str] = None) -> None:
    pos = play.positions
    if not pos:
        raise ArenaError("empty play")
    start = arena.initial if root is None else root
    if pos[0] != start:
        raise ArenaError(f"play starts at {pos[0]!r}, expected {start!r}")
    for a, b in zip(pos, pos[1:]):
        if arena.edge(a, b) is None:
            raise ArenaError(f"play uses missing edge {a!r} -> {b!r}")


def utility(game, play, player: Player, root: Optional[str] = None) -> ExtNat:
    """Utility of ``play`` for ``player``: weight paid up to the first target visit.

    ``game`` is an :class:`Arena` (edge weights are summed) or a
    :class:`TargetWeightedArena` (the first target's weight is used).
    ``INF`` when the play never visits the player's target set.  A play
    starting in the target set has utility 0, except at a target weighted
    ``INF``.
    """
    if not isinstance(play, Play):
        play = Play(tuple(play))
    arena = game.arena if isinstance(game, TargetWeightedArena) else game
    check_play(arena, play, root)
    pos = play.positions
    for k, s in enumerate(pos):
        if arena.is_target(s, player):
            if isinstance(game, TargetWeightedArena):
                w = game.target_weight(s, player)
                # an INF-weighted target (leaf trees) is never a win, even at the start
                return 0 if k == 0 and w != INF else w
            if k == 0:
                return 0
            return sum(arena.weight(pos[j], pos[j + 1], player) for j in range(k))
    return INF


def outcome(arena: Arena, strategy_1: "Strategy", strategy_2: "Strategy", root: Optional[str] = None) -> Play:
    """The play produced by two strategies.

    Tracing stops at a dead end, once both target sets have been visited
    (utilities are settled), or when a (position, memory, memory) state
    repeats, in which case the returned play carries the lasso certificate.
    """
    if isinstance(arena, TargetWeightedArena):
        arena = arena.arena
    strategies = {strategy_1.player: strategy_1, strategy_2.player: strategy_2}
    if set(strategies) != {Player.P1, Player.P2}:
        raise StrategyError("outcome needs one strategy per player")
    s = arena.initial if root is None else root
    mem = {p: strategies[p].initial for p in strategies}
    seen: dict = {}
    path = [s]
    visited = {Player.P1: False, Player.P2: False}
    while True:
        for p in visited:
            visited[p] = visited[p] or arena.is_target(s, p)
        if all(visited.values()):
            return Play(path)
        succ = arena.successors(s)
        if not succ:
            return Play(path, dead_end=True)
        state = (s, mem[Player.P1], mem[Player.P2])
        if state in seen:
            # the repeated state is the current (last) position; drop the duplicate
            return Play(path[:-1], loop_start=seen[state])
        seen[state] = len(path) - 1
        owner = arena.owner(s)
        nxt = strategies[owner].move(mem[owner], s)
        if nxt is None or arena.edge(s, nxt) is None:
            raise StrategyError(f"strategy of player {int(owner)} proposes {nxt!r} at {s!r}")
        for p in strategies:
            mem[p] = strategies[p].update(mem[p], s, nxt)
        s = nxt
        path.append(s)


def play_utilities(arena: Arena, play: Play) -> tuple[ExtNat, ExtNat]:
    return utility(arena, play, Player.P1), utility(arena, play, Player.P2)


# ---------------------------------------------------------------------------
# trees


def tree_violations(arena: Arena, root: Optional[str] = None) -> list[str]:
    """Why ``arena`` is not a tree rooted at its initial position (empty if it is)."""
    out = validate(arena)
    if out:
        return out
    root = arena.initial if root is None else root
    indeg: dict[str, int] = {p: 0 for p in arena.ids}
    for e in arena.edges:
        indeg[e.dst] += 1
    if indeg[root]:
        out.append(f"root {root!r} has incoming edges")
    out.extend(f"position {p!r} has {d} incoming edges" for p, d in indeg.items() if d > 1)
    reach = {root}
    stack = [root]
    while stack:
        for t in arena.successors(stack.pop()):
            if t not in reach:
                reach.add(t)
                stack.append(t)
    out.extend(f"position {p!r} is not reachable from the root" for p in arena.ids if p not in reach)
    return out


def is_tree(arena: Arena) -> bool:
    return not tree_violations(arena)


def edge_tree_to_leaf_twa(tree: Arena) -> TargetWeightedArena:
    """Move every utility onto the leaves of a tree arena.

    Both players' target sets become the set of leaves; each leaf is
    weighted, per player, by the utility of its root-to-leaf path (``INF``
    when that path misses the player's original targets).  Edge weights are
    erased.
    """
    problems = tree_violations(tree)
    if problems:
        raise ArenaError("not a tree arena: " + "; ".join(problems), problems)
    leaves = [p for p in tree.ids if not tree.successors(p)]
    w = {Player.P1: {}, Player.P2: {}}
    # (position, accumulated weights, utilities so far)
    stack = [(tree.initial, (0, 0), (None, None))]
    while stack:
        s, acc, util = stack.pop()
        util = tuple(
            util[k] if util[k] is not None else (acc[k] if tree.is_target(s, p) else None)
            for k, p in enumerate((Player.P1, Player.P2))
        )
        succ = tree.out_edges(s)
        if not succ:
            for k, p in enumerate((Player.P1, Player.P2)):
                w[p][s] = INF if util[k] is None else util[k]
            continue
        for e in succ:
            stack.append((e.dst, (acc[0] + e.w1, acc[1] + e.w2), util))
    leafset = set(leaves)
    positions = tuple(Position(p.id, p.owner, p.id in leafset, p.id in leafset) for p in tree.positions)
    edges = tuple(Edge(e.src, e.dst, 0, 0) for e in tree.edges)
    return TargetWeightedArena(Arena(positions, tree.initial, edges, tree.name), w[Player.P1], w[Player.P2])


def reachability_twa(arena: Arena) -> TargetWeightedArena:
    """The same arena with every target weighted 0: a plain reachability game."""
    maps = [{t: 0 for t in arena.targets(p)} for p in (Player.P1, Player.P2)]
    edges = tuple(Edge(e.src, e.dst, 0, 0) for e in arena.edges)
    return TargetWeightedArena(Arena(arena.positions, arena.initial, edges, arena.name), maps[0], maps[1])


def reachable(arena: Arena, root: Optional[str] = None) -> set[str]:
    root = arena.initial if root is None else root
    seen = {root}
    stack = [root]
    while stack:
        for t in arena.successors(stack.pop()):
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen
