"""Iterated regret minimization on finite tree arenas.

A tree is first turned into a leaf-weighted game (every root-to-leaf
utility moved onto the leaf).  Each rank then tracks, for both players at
once, the best alternative of every root path; reduces the leaf weights
by it; solves both min-max values by backward induction; and deletes every
edge leaving a player's node towards a child whose min-max value exceeds
that player's value at the root.  Ranks repeat on the surviving subtree
until nothing is deleted.  One rank is a constant number of linear passes,
so the whole iteration is quadratic in the tree size.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .arena import Arena, Player, TargetWeightedArena, edge_tree_to_leaf_twa, tree_violations
from .errors import ArenaError
from .extnat import INF, ExtNat
from .strategy import MemorylessStrategy

BIG = kernels.BIG


def _ext(v) -> ExtNat:
    v = int(v)
    return INF if v >= BIG else v


def _big(v: ExtNat) -> int:
    return BIG if v == INF else int(v)


class IndexedTree:
    """Preorder layout of a leaf-weighted tree, as consumed by the kernels."""

    def __init__(self, twa: TargetWeightedArena):
        arena = twa.arena
        problems = tree_violations(arena)
        if problems:
            raise ArenaError("not a tree arena: " + "; ".join(problems), problems)
        labels, parent = [], []
        stack = [(arena.initial, -1)]
        while stack:
            s, par = stack.pop()
            labels.append(s)
            parent.append(par)
            me = len(labels) - 1
            # reversed push keeps children in increasing id order
            for t in reversed(arena.successors(s)):
                stack.append((t, me))
        self.labels = labels
        self.index = {s: i for i, s in enumerate(labels)}
        self.parent = parent
        n = len(labels)
        children = [[] for _ in range(n)]
        for i in range(1, n):
            children[parent[i]].append(i)
        self.children = children
        ptr = [0]
        for ch in children:
            ptr.append(ptr[-1] + len(ch))
        self.child_ptr = np.asarray(ptr, dtype=np.int64)
        self.child_idx = np.asarray([c for ch in children for c in ch], dtype=np.int64)
        self.owner = np.asarray([int(arena.owner(s)) for s in labels], dtype=np.int64)
        self.leafw = {}
        for p in (Player.P1, Player.P2):
            w = np.zeros(n, dtype=np.int64)
            for i, s in enumerate(labels):
                if not children[i]:
                    if not arena.is_target(s, p):
                        raise ArenaError(f"leaf {s!r} is not a target of player {int(p)}")
                    w[i] = _big(twa.target_weight(s, p))
            self.leafw[int(p)] = w
        self.twa = twa

    def __len__(self):
        return len(self.labels)

    def is_leaf(self, i: int) -> bool:
        return not self.children[i]

    def run_pass(self, edge_ok: np.ndarray) -> dict:
        return kernels.tree_pass(self.child_ptr, self.child_idx, self.owner, self.leafw[1], self.leafw[2], edge_ok)

    def subtree_arena(self, alive) -> TargetWeightedArena:
        """The surviving part as a leaf-weighted tree (its new leaves stay targets only if they were)."""
        arena = self.twa.arena
        keep = {self.labels[i] for i in range(len(self)) if alive[i]}
        positions = tuple(p for p in arena.positions if p.id in keep)
        edges = tuple(e for e in arena.edges if e.src in keep and e.dst in keep)
        sub = Arena(positions, arena.initial, edges, arena.name)
        w1 = {s: w for s, w in self.twa.weights1.items() if s in keep}
        w2 = {s: w for s, w in self.twa.weights2.items() if s in keep}
        return TargetWeightedArena(sub, w1, w2)


def as_leaf_tree(tree) -> TargetWeightedArena:
    """Accept an edge-weighted tree arena or an already leaf-weighted one."""
    if isinstance(tree, TargetWeightedArena):
        return tree
    return edge_tree_to_leaf_twa(tree)


@dataclass(frozen=True)
class DualBATree:
    """Both players' best alternatives along every root path, and the reduced leaf weights.

    All maps are keyed by position id.  ``weights[i]`` only has leaves.
    """

    tree: TargetWeightedArena
    b1: dict
    b2: dict
    weights1: dict
    weights2: dict
    minmax1: dict = field(default_factory=dict)
    minmax2: dict = field(default_factory=dict)

    def b(self, player: Player) -> dict:
        return self.b1 if int(player) == 1 else self.b2

    def weights(self, player: Player) -> dict:
        return self.weights1 if int(player) == 1 else self.weights2

    def node(self, pid: str) -> tuple:
        """The product node ``(s, b1, b2)``."""
        return (pid, self.b1[pid], self.b2[pid])


def _dual_from_pass(it: IndexedTree, res: dict) -> DualBATree:
    alive = res["alive"]
    live = [i for i in range(len(it)) if alive[i]]
    lab = it.labels

    def col(key, only_leaves=False):
        arr = res[key]
        return {lab[i]: _ext(arr[i]) for i in live if not only_leaves or it.is_leaf(i)}

    return DualBATree(
        it.twa, col("ba1"), col("ba2"), col("nu1", True), col("nu2", True), col("minmax1"), col("minmax2")
    )


def dual_ba_tree(leaf_tree) -> DualBATree:
    """Best alternatives and reduced leaf weights for both players (two linear passes each)."""
    it = IndexedTree(as_leaf_tree(leaf_tree))
    scratch = np.ones(len(it), dtype=np.uint8)
    return _dual_from_pass(it, it.run_pass(scratch))


def backward_minmax(dual: DualBATree, player: Player) -> dict:
    """Min-max value of every node on the reduced weights.

    Leaves carry their reduced weight, the player's nodes take the minimum
    over children and the opponent's nodes the maximum.
    """
    arena = dual.tree.arena
    w = dual.weights(player)
    p = Player(player)
    out: dict = {}
    order = []
    stack = [arena.initial]
    while stack:
        s = stack.pop()
        order.append(s)
        stack.extend(arena.successors(s))
    for s in reversed(order):
        succ = arena.successors(s)
        if not succ:
            out[s] = w[s]
        elif arena.owner(s) == p:
            out[s] = min(out[t] for t in succ)
        else:
            out[s] = max(out[t] for t in succ)
    return out


def delete_step(dual: DualBATree) -> TargetWeightedArena:
    """Remove the edges a player would never take in a regret-minimal strategy; keep the root's component."""
    arena = dual.tree.arena
    mm = {1: backward_minmax(dual, Player.P1), 2: backward_minmax(dual, Player.P2)}
    root = arena.initial
    removed = {
        (e.src, e.dst)
        for e in arena.edges
        if mm[int(arena.owner(e.src))][e.dst] > mm[int(arena.owner(e.src))][root]
    }
    keep = {root}
    stack = [root]
    while stack:
        s = stack.pop()
        for t in arena.successors(s):
            if (s, t) not in removed:
                keep.add(t)
                stack.append(t)
    positions = tuple(p for p in arena.positions if p.id in keep)
    edges = tuple(e for e in arena.edges if e.src in keep and e.dst in keep and (e.src, e.dst) not in removed)
    w1 = {s: v for s, v in dual.tree.weights1.items() if s in keep}
    w2 = {s: v for s, v in dual.tree.weights2.items() if s in keep}
    return TargetWeightedArena(Arena(positions, root, edges, arena.name), w1, w2)


@dataclass(frozen=True)
class IteratedReport:
    """Result of iterating the delete operator to its fixpoint.

    ``regrets[j-1]`` is the pair of rank-``j`` regrets, computed on the
    subtree that survived ``j - 1`` deletions; ``alive[j-1]`` lists that
    subtree's positions.  ``star`` is the first rank whose deletion removes
    nothing, so ``regrets[star-1]`` are the iterated regrets.
    """

    regrets: tuple
    alive: tuple
    star: int
    survivors: frozenset
    witnesses: dict
    visits: int
    tree: TargetWeightedArena

    @property
    def final(self) -> tuple:
        return self.regrets[-1]

    def subtree(self, rank: int) -> TargetWeightedArena:
        """Leaf-weighted tree that rank ``rank`` operates on (rank 1 is the whole tree)."""
        keep = self.alive[rank - 1]
        arena = self.tree.arena
        sub = Arena(
            tuple(p for p in arena.positions if p.id in keep),
            arena.initial,
            tuple(e for e in arena.edges if e.src in keep and e.dst in keep),
            arena.name,
        )
        return TargetWeightedArena(
            sub,
            {s: v for s, v in self.tree.weights1.items() if s in keep},
            {s: v for s, v in self.tree.weights2.items() if s in keep},
        )


def iterated_regret(tree, max_rank: Optional[int] = None) -> IteratedReport:
    """Iterate deletion on a tree arena (edge-weighted or leaf-weighted) until it stabilizes."""
    twa = as_leaf_tree(tree)
    it = IndexedTree(twa)
    n = len(it)
    edge_ok = np.ones(n, dtype=np.uint8)
    regrets, alive_sets = [], []
    visits = 0
    while max_rank is None or len(regrets) < max_rank:
        res = it.run_pass(edge_ok)
        visits += res["visits"]
        alive = res["alive"]
        regrets.append((_ext(res["minmax1"][0]), _ext(res["minmax2"][0])))
        alive_sets.append(frozenset(it.labels[i] for i in range(n) if alive[i]))
        if res["removed"] == 0:
            break
    final = [0] * n
    final[0] = 1
    for i in range(1, n):
        final[i] = 1 if final[it.parent[i]] and edge_ok[i] else 0
    witnesses = {}
    for p in (1, 2):
        choices = {}
        for i in range(n):
            if it.owner[i] != p:
                continue
            ch = it.children[i]
            if not ch:
                choices[it.labels[i]] = None
                continue
            allowed = [c for c in ch if edge_ok[c]] or ch
            choices[it.labels[i]] = it.labels[allowed[0]]
        witnesses[p] = MemorylessStrategy(Player(p), choices)
    return IteratedReport(
        tuple(regrets),
        tuple(alive_sets),
        len(regrets),
        frozenset(it.labels[i] for i in range(n) if final[i]),
        witnesses,
        visits,
        twa,
    )
