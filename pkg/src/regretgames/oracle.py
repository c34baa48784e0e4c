"""Brute-force reference computations, straight from the definitions.

Nothing here reuses the solvers' reductions; the only shared pieces are
the arena model, ``utility`` and the explicit-set delete operator of
:mod:`regretgames.matrix_irm`.

Trees
    Strategies are enumerated explicitly.  A strategy is only defined on
    the positions it does not itself rule out, so a player's node
    contributes the *sum* of its children's counts and an opponent node
    their *product*.

Graphs
    The play tree is explored directly with the player's choices under a
    min and the opponent's under a max.  Every leaf is valued
    ``u - min(u, d)`` where ``u`` is the play's utility and ``d`` the
    cheapest value the player could have reached by deviating earlier
    (the opponent cooperating after the deviation).  Plays stop when the
    accumulated weight exceeds ``2 * M * |S|`` or when
    ``(position, accumulated weight, d)`` repeats on the current path; both
    count as lost (utility ``INF``).  A regret-optimal strategy that is
    memoryless over those triples never triggers either cut, and every
    cut only hurts the player, so the value is exact.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Optional, Sequence

from .arena import Arena, Player, TargetWeightedArena, as_graph, tree_violations, utility
from .errors import ArenaError, ResourceLimitError
from .extnat import INF, ExtNat, monus, sub
from .matrix_irm import from_utilities, iterate

STRATEGY_GUARD = 10**6
NODE_CAP = 5 * 10**6


# ---------------------------------------------------------------------------
# trees


def _tree_arena(tree) -> Arena:
    arena = tree.arena if isinstance(tree, TargetWeightedArena) else tree
    problems = tree_violations(arena)
    if problems:
        raise ArenaError("not a tree arena: " + "; ".join(problems), problems)
    return arena


def strategy_count(tree, player: Player, root: Optional[str] = None) -> int:
    """Number of strategies of ``player`` (closed form, no enumeration)."""
    arena = _tree_arena(tree)
    player = Player(player)

    start = arena.initial if root is None else root
    # children before parents, without recursion (unfoldings can be deep)
    order, stack = [], [start]
    while stack:
        s = stack.pop()
        order.append(s)
        stack.extend(arena.successors(s))
    count: dict = {}
    for s in reversed(order):
        succ = arena.successors(s)
        if not succ:
            count[s] = 1
        elif arena.owner(s) == player:
            count[s] = sum(count[t] for t in succ)
        else:
            count[s] = prod(count[t] for t in succ)
    return count[start]


def tree_strategies(tree, player: Player, guard: int = STRATEGY_GUARD) -> list[dict]:
    """Every strategy of ``player``, as ``{position: chosen child}`` maps.

    Order is deterministic: choices at smaller ids vary slowest, children
    in increasing id order.
    """
    arena = _tree_arena(tree)
    player = Player(player)
    n = strategy_count(tree, player)
    if n > guard:
        raise ResourceLimitError(f"{n} strategies exceed the enumeration guard {guard}", guard, n)

    order, stack = [], [arena.initial]
    while stack:
        s = stack.pop()
        order.append(s)
        stack.extend(arena.successors(s))
    partial: dict = {}
    for s in reversed(order):
        succ = arena.successors(s)
        if not succ:
            partial[s] = [{}]
            continue
        parts = [partial.pop(t) for t in succ]
        out = []
        if arena.owner(s) == player:
            for t, rest in zip(succ, parts):
                for r in rest:
                    d = {s: t}
                    d.update(r)
                    out.append(d)
        else:
            for combo in itertools.product(*parts):
                d = {}
                for part in combo:
                    d.update(part)
                out.append(d)
        partial[s] = out
    return partial[arena.initial]


def _walker(arena: Arena):
    """Outcome function for an already validated tree."""
    owner = {p.id: p.owner for p in arena.positions}
    inner = {e.src for e in arena.edges}

    def walk(s1: dict, s2: dict) -> tuple[str, ...]:
        s = arena.initial
        path = [s]
        while s in inner:
            s = (s1 if owner[s] == Player.P1 else s2)[s]
            path.append(s)
        return tuple(path)

    return walk


def tree_outcome(tree, s1: dict, s2: dict) -> tuple[str, ...]:
    """Root-to-leaf play of two tree strategies."""
    return _walker(_tree_arena(tree))(s1, s2)


def _utilities(tree, plays1: Sequence[dict], plays2: Sequence[dict], player: Player) -> list[list[ExtNat]]:
    walk = _walker(_tree_arena(tree))
    cache: dict = {}
    out = []
    for a in plays1:
        row = []
        for b in plays2:
            path = walk(a, b)
            key = path[-1]
            if key not in cache:
                cache[key] = utility(tree, path, player)
            row.append(cache[key])
        out.append(row)
    return out


def regret_bruteforce(tree, player: Player, own_set=None, opp_set=None) -> ExtNat:
    """``min`` over own strategies of ``max`` over opposing ones of ``u - min u``.

    The inner ``min`` ranges over ``own_set``; both sets default to every
    strategy of the tree.
    """
    player = Player(player)
    own = tree_strategies(tree, player) if own_set is None else list(own_set)
    opp = tree_strategies(tree, player.opponent) if opp_set is None else list(opp_set)
    if not own:
        raise ValueError("own strategy set is empty")
    if not opp:
        raise ValueError("opposing strategy set is empty")
    if player == Player.P1:
        u = _utilities(tree, own, opp, player)
    else:
        u = [list(col) for col in zip(*_utilities(tree, opp, own, player))]
    colmin = [min(u[a][b] for a in range(len(own))) for b in range(len(opp))]
    return min(max(sub(u[a][b], colmin[b]) for b in range(len(opp))) for a in range(len(own)))


def tree_strategy_regret(tree, player: Player, strategy: dict, own_set=None, opp_set=None) -> ExtNat:
    """Regret of one strategy: worst case over ``opp_set`` of its utility minus the best response in ``own_set``."""
    player = Player(player)
    own = tree_strategies(tree, player) if own_set is None else list(own_set)
    opp = tree_strategies(tree, player.opponent) if opp_set is None else list(opp_set)
    walk = _walker(_tree_arena(tree))
    worst = 0
    for b in opp:
        pair = (lambda a: (a, b)) if player == Player.P1 else (lambda a: (b, a))
        best = min(utility(tree, walk(*pair(a)), player) for a in own)
        mine = utility(tree, walk(*pair(strategy)), player)
        worst = max(worst, sub(mine, best))
    return worst


@dataclass(frozen=True)
class BruteIteration:
    """Explicit delete-operator iteration on a tree.

    ``sets[j-1]`` holds, per player, the indices (into ``strategies``) of
    the strategies that rank ``j`` starts from; ``regrets[j-1]`` are the
    rank-``j`` regrets.  The last rank removes nothing (unless cut by
    ``max_rank``).
    """

    strategies: dict
    sets: tuple
    regrets: tuple

    @property
    def star(self) -> int:
        return len(self.regrets)

    def survivors(self, rank: int, player: Player) -> list[dict]:
        return [self.strategies[int(player)][k] for k in sorted(self.sets[rank - 1][int(player) - 1])]


def iterated_bruteforce(tree, max_rank: Optional[int] = None, guard: int = STRATEGY_GUARD) -> BruteIteration:
    """Apply the delete operator to explicit strategy sets until it stabilizes."""
    s1 = tree_strategies(tree, Player.P1, guard)
    s2 = tree_strategies(tree, Player.P2, guard)
    if len(s1) * len(s2) > guard:
        raise ResourceLimitError(
            f"{len(s1)} x {len(s2)} strategy pairs exceed the enumeration guard {guard}", guard, len(s1) * len(s2)
        )
    u1 = _utilities(tree, s1, s2, Player.P1)
    u2 = _utilities(tree, s1, s2, Player.P2)
    it = iterate(from_utilities(u1, u2), max_rank)
    sets = tuple((r.survivors.rows, r.survivors.cols) for r in it.ranks)
    return BruteIteration({1: s1, 2: s2}, sets, tuple(it.regrets))


def nash_outcomes(tree, guard: int = STRATEGY_GUARD) -> set[tuple]:
    """Penalty pairs of all pure Nash equilibria (no player can lower her own penalty alone)."""
    s1 = tree_strategies(tree, Player.P1, guard)
    s2 = tree_strategies(tree, Player.P2, guard)
    if len(s1) * len(s2) > guard:
        raise ResourceLimitError(
            f"{len(s1)} x {len(s2)} strategy pairs exceed the enumeration guard {guard}", guard, len(s1) * len(s2)
        )
    u1 = _utilities(tree, s1, s2, Player.P1)
    u2 = _utilities(tree, s1, s2, Player.P2)
    col_best = [min(u1[a][b] for a in range(len(s1))) for b in range(len(s2))]
    row_best = [min(u2[a]) for a in range(len(s1))]
    return {
        (u1[a][b], u2[a][b])
        for a in range(len(s1))
        for b in range(len(s2))
        if u1[a][b] == col_best[b] and u2[a][b] == row_best[a]
    }


def project(tree, strategy: dict, player: Player, alive) -> Optional[dict]:
    """Restrict ``strategy`` to the subtree ``alive`` (positions it can still reach there).

    ``None`` when the strategy leaves the subtree at one of its own nodes.
    """
    arena = _tree_arena(tree)
    player = Player(player)
    out = {}
    stack = [arena.initial]
    while stack:
        s = stack.pop()
        if not arena.successors(s):
            continue
        if arena.owner(s) == player:
            t = strategy.get(s)
            if t not in alive:
                return None
            out[s] = t
            stack.append(t)
        else:
            stack.extend(t for t in arena.successors(s) if t in alive)
    return out


def _key(strategy: dict) -> tuple:
    return tuple(sorted(strategy.items()))


def survivors_match_subtree(tree, survivors: Sequence[dict], player: Player, alive) -> bool:
    """Do explicit survivors and the strategies of the subtree ``alive`` coincide (up to unreachable choices)?"""
    projected = set()
    for s in survivors:
        pr = project(tree, s, player, alive)
        if pr is None:
            return False
        projected.add(_key(pr))
    arena = _tree_arena(tree)
    sub = Arena(
        tuple(p for p in arena.positions if p.id in alive),
        arena.initial,
        tuple(e for e in arena.edges if e.src in alive and e.dst in alive),
        arena.name,
    )
    return projected == {_key(s) for s in tree_strategies(sub, player)}


# ---------------------------------------------------------------------------
# graphs


def bellman_ford_best(game, player: Player) -> list[ExtNat]:
    """Cheapest utility from every node when both players cooperate (Bellman-Ford)."""
    g = as_graph(game)
    p = int(player)
    n = len(g)
    dist = [0 if g.targets[p][s] else INF for s in range(n)]
    for _ in range(n):
        changed = False
        for s in range(n):
            if g.targets[p][s]:
                continue
            for k, t in enumerate(g.succ[s]):
                v = g.weights[p][s][k] + dist[t]
                if v < dist[s]:
                    dist[s] = v
                    changed = True
        if not changed:
            break
    return dist


def graph_bound(game) -> int:
    """``2 * M * |S|`` for an arena (edge weights) or a target-weighted arena (target weights)."""
    g = as_graph(game)
    m = max(g.max_weight(1), g.max_weight(2))
    return 2 * m * len(g)


def graph_regret_bruteforce(
    game, player: Player = Player.P1, bound: Optional[int] = None, node_cap: int = NODE_CAP
) -> ExtNat:
    """Exact regret of ``player`` on a small arena, by exploring its play tree."""
    g = as_graph(game)
    p = int(player)
    B = graph_bound(game) if bound is None else bound
    best = bellman_ford_best(g, player)
    memo: dict = {}
    on_path: dict = {}
    budget = [node_cap]
    NOREF = 1 << 60

    def rec(s, acc, devs, depth):
        if g.targets[p][s]:
            return monus(acc, devs), NOREF
        if acc > B:
            return INF, NOREF
        key = (s, acc, devs)
        hit = memo.get(key)
        if hit is not None:
            return hit, NOREF
        if key in on_path:
            return INF, on_path[key]
        succ = g.succ[s]
        if not succ:
            return INF, NOREF
        budget[0] -= 1
        if budget[0] < 0:
            raise ResourceLimitError(f"play tree exceeds the node cap {node_cap}", node_cap, None)
        on_path[key] = depth
        ws = g.weights[p][s]
        low = NOREF
        if g.owner[s] == p:
            vals = [acc + ws[k] + best[t] for k, t in enumerate(succ)]
            value = INF
            for k, t in enumerate(succ):
                d = min([devs] + [v for j, v in enumerate(vals) if j != k])
                v, lw = rec(t, acc + ws[k], d, depth + 1)
                low = min(low, lw)
                value = min(value, v)
        else:
            value = 0
            for k, t in enumerate(succ):
                v, lw = rec(t, acc + ws[k], devs, depth + 1)
                low = min(low, lw)
                value = max(value, v)
        del on_path[key]
        if low >= depth:
            memo[key] = value
            low = NOREF
        return value, low

    return rec(g.initial, 0, INF, 0)[0]


def strategy_regret_bruteforce(game, player: Player, strategy) -> ExtNat:
    """Regret of one fixed (memoryless or finite-memory) strategy against every opponent behaviour.

    Explores all plays the strategy allows.  The opponent can keep any
    play forever once a (position, memory) pair repeats, which never
    reaches a target and therefore costs ``INF``.
    """
    g = as_graph(game)
    p = int(player)
    best = bellman_ford_best(g, player)
    labels = g.labels
    index = g.index
    on_path: set = set()

    def rec(s, mem, acc, devs):
        if g.targets[p][s]:
            return monus(acc, devs)
        succ = g.succ[s]
        if not succ:
            return INF
        key = (s, mem)
        if key in on_path:
            return INF
        on_path.add(key)
        ws = g.weights[p][s]
        if g.owner[s] == p:
            nxt = strategy.move(mem, labels[s])
            k = succ.index(index[nxt])
            d = min([devs] + [acc + ws[j] + best[t] for j, t in enumerate(succ) if j != k])
            value = rec(succ[k], strategy.update(mem, labels[s], nxt), acc + ws[k], d)
        else:
            value = 0
            for k, t in enumerate(succ):
                v = rec(t, strategy.update(mem, labels[s], labels[t]), acc + ws[k], devs)
                value = max(value, v)
        on_path.discard(key)
        return value

    return rec(g.initial, strategy.initial, 0, INF)
