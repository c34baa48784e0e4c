"""Small independent reference computations shared by the tests."""
from regretgames.arena import Player, TargetWeightedArena, outcome, utility
from regretgames.extnat import INF
from regretgames.strategy import all_memoryless_strategies


def brute_minmax(arena, player):
    """min over memoryless strategies of max over memoryless adversaries of the first target's weight."""
    twa = TargetWeightedArena.from_arena(arena, (Player(player),))
    p = Player(player)
    best = INF
    for mine in all_memoryless_strategies(arena, p):
        worst = 0
        for theirs in all_memoryless_strategies(arena, p.opponent):
            play = outcome(arena, mine, theirs)
            worst = max(worst, utility(twa, play, p))
            if worst >= best:
                break
        best = min(best, worst)
    return best


def strategy_guarantee(arena, player, strategy):
    """Worst first-target weight of ``strategy`` over memoryless adversaries."""
    twa = TargetWeightedArena.from_arena(arena, (Player(player),))
    p = Player(player)
    return max(
        utility(twa, outcome(arena, strategy, theirs), p) for theirs in all_memoryless_strategies(arena, p.opponent)
    )


def path_best_alternative(g, p, path, best):
    """Best alternative of a path of node indices in a target-weighted game.

    At every node of player ``p`` other than the last, leaving through
    another edge to ``t`` would have been worth ``w(s, t) + best[t]`` (the
    target weight when ``t`` is a target, ``best[t]`` otherwise).
    """
    value = INF
    for s, nxt in zip(path, path[1:]):
        if g.owner[s] == p:
            succ = g.succ[s]
            taken = succ.index(nxt)
            for k, t in enumerate(succ):
                if k != taken:
                    value = min(value, g.weights[p][s][k] + best[t])
    return value


def ba_product_violations(game, player):
    """Best-alternative product of a target-weighted game, and every node or edge whose stored b is off.

    Each node's b is compared with the best alternative of its
    construction path, and each edge with the one-step update rule.
    """
    from regretgames import oracle, regret_twa

    h = regret_twa.build_best_alternative_graph(game, player)
    src, p = h.source, int(player)
    best = oracle.bellman_ford_best(src, player)
    bad = [k for k in range(len(h)) if h.b(k) != path_best_alternative(src, p, h.path(k), best)]
    for k, row in enumerate(h.graph.succ):
        s = h.origin[k]
        for j in row:
            t = h.origin[j]
            if src.owner[s] == p:
                others = [src.weights[p][s][i] + best[x] for i, x in enumerate(src.succ[s]) if x != t]
                expected = min([h.b(k)] + others)
            else:
                expected = h.b(k)
            if h.b(j) != expected:
                bad.append((k, j))
    return h, bad


ORACLE_PAIRS = 10**5
ORACLE_WORK = 5 * 10**6


def oracle_bound(arena, cap=10**5):
    """The true unfolding bound when the oracle can handle it, otherwise the largest override in 4..2 it can.

    The oracle replays every strategy pair through the unfolding, so both
    the pair count and pairs times unfolding size are capped.
    """
    from regretgames import iterated_positive as ip
    from regretgames import oracle

    true_bound = ip.bounds(arena)[1]
    for b in (true_bound, 4, 3, 2):
        if ip.count_plays(arena, b, cap) > cap:
            continue
        tree = ip.unfold(arena, b, ip.UnfoldConfig(cap=cap)).tree
        pairs = oracle.strategy_count(tree, Player.P1) * oracle.strategy_count(tree, Player.P2)
        if pairs <= ORACLE_PAIRS and pairs * len(tree.ids) <= ORACLE_WORK:
            return b
    return None
