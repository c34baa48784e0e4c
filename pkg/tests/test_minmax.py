import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import brute_minmax, strategy_guarantee
from regretgames import generate, minmax
from regretgames.arena import Arena, Player, TargetWeightedArena
from regretgames.extnat import INF


def twa(arena, player=Player.P1):
    return TargetWeightedArena.from_arena(arena, (player,))


def diamond(light=2, heavy=5):
    # player 2 at the top chooses which target player 1 gets
    return Arena.build(
        [("top", 2), ("l", 1, True), ("h", 1, True), ("x", 1)],
        [("top", "l", light), ("top", "h", heavy), ("l", "x"), ("h", "x"), ("x", "x")],
        "top",
    )


def test_initial_target_zero(backend):
    arena = Arena.build([("t", 1, True)], [], "t")
    assert minmax.can_achieve(twa(arena), Player.P1, 0).won
    assert minmax.minmax_value(twa(arena), Player.P1) == 0


def test_unreachable_target(backend):
    arena = Arena.build([("a", 1), ("b", 1), ("t", 2, True)], [("a", "b", 0), ("b", "a", 0), ("t", "t", 4)], "a")
    for k in (0, 4, 100):
        assert not minmax.can_achieve(twa(arena), Player.P1, k).won
    assert minmax.minmax_value(twa(arena), Player.P1) == INF
    sol = minmax.solve(twa(arena), Player.P1)
    assert not sol.winning
    assert sol.strategy(Player.P1).choices == {"a": "b", "b": "a"}


def test_forced_path(backend):
    arena = Arena.build([("a", 2), ("b", 1), ("t", 2, True)], [("a", "b"), ("b", "t", 7)], "a")
    assert minmax.minmax_value(twa(arena), Player.P1) == 7
    assert minmax.minmax_strategy(twa(arena), Player.P1).choices == {"b": "t"}


def test_diamond_adversary_forces_heavier(backend):
    g = twa(diamond())
    for k in range(8):
        assert minmax.can_achieve(g, Player.P1, k).won == (k >= 5)
    assert minmax.minmax_value(g, Player.P1) == 5 == brute_minmax(diamond(), Player.P1)


def test_diamond_choice_ties_to_smaller_id(backend):
    arena = Arena.build(
        [("s", 1), ("a", 2), ("b", 2), ("t1", 1, True), ("t2", 1, True), ("t3", 1, True)],
        [("s", "a"), ("s", "b"), ("a", "t1", 3), ("a", "t2", 1), ("b", "t3", 3)],
        "s",
    )
    sol = minmax.solve(twa(arena), Player.P1)
    assert sol.value == 3
    # both branches guarantee 3; the smaller id wins
    assert sol.strategy(Player.P1).choices["s"] == "a"
    assert strategy_guarantee(arena, Player.P1, sol.strategy(Player.P1)) == 3


def test_dead_end_opponent_positions_never_join(backend):
    arena = Arena.build([("s", 1), ("d", 2), ("t", 1, True)], [("s", "d"), ("s", "t", 4)], "s")
    assert minmax.minmax_value(twa(arena), Player.P1) == 4


def test_requires_finite_k():
    g = twa(diamond())
    with pytest.raises(ValueError):
        minmax.can_achieve(g, Player.P1, INF)
    with pytest.raises(TypeError):
        minmax.can_achieve(diamond().graph, Player.P1, 1)


@given(st.integers(0, 10**6), st.integers(2, 7), st.sampled_from([Player.P1, Player.P2]))
def test_minmax_matches_memoryless_enumeration(seed, n, player):
    arena = generate.random_twa(seed, n, 4, max_out=2)
    g = twa(arena, player)
    value = minmax.minmax_value(g, player)
    assert value == brute_minmax(arena, player)
    assert value == INF or value in set(g.weights(player).values()) | {0}
    strat = minmax.minmax_strategy(g, player)
    assert strategy_guarantee(arena, player, strat) <= value


@given(st.integers(0, 10**6), st.integers(2, 9))
def test_attractor_monotone_and_budgeted(seed, n):
    arena = generate.random_twa(seed, n, 4)
    g = twa(arena).graph
    prev, prev_won = None, False
    for k in range(5):
        res = minmax.can_achieve(g, Player.P1, k)
        assert res.updates <= len(g) + g.n_edges
        won = set(res.winning_indices())
        if prev is not None:
            assert prev <= won
            assert res.won or not prev_won
        prev, prev_won = won, res.won
        assert int(res.rank.max(initial=-1)) <= len(g)


@given(st.integers(0, 10**6), st.integers(2, 8))
def test_backends_agree(seed, n):
    from regretgames import kernels

    g = twa(generate.random_twa(seed, n, 4)).graph
    results = []
    for name in kernels.available():
        prev = kernels.use(name)
        try:
            r = minmax.can_achieve(g, Player.P1, 2)
            results.append((r.won, r.rank.tolist(), r.updates))
        finally:
            kernels.use(prev)
    assert all(r == results[0] for r in results)
