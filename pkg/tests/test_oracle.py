import pytest
from hypothesis import given
from hypothesis import strategies as st

from regretgames import fixtures, generate, oracle
from regretgames.arena import Arena, Player, TargetWeightedArena
from regretgames.errors import ArenaError, ResourceLimitError
from regretgames.extnat import INF


def leaves(owner, w1, w2=None):
    w2 = w2 or {k: 0 for k in w1}
    arena = Arena.build([("r", owner)] + [(k, 1, True, True) for k in w1], [("r", k) for k in w1], "r")
    return TargetWeightedArena(arena, w1, w2)


@given(st.integers(0, 10**6), st.integers(1, 8), st.sampled_from([Player.P1, Player.P2]))
def test_strategy_count_matches_enumeration(seed, n, player):
    tree = generate.random_tree(seed, n)
    strategies = oracle.tree_strategies(tree, player)
    assert len(strategies) == oracle.strategy_count(tree, player)
    assert len({tuple(sorted(s.items())) for s in strategies}) == len(strategies)


def test_two_leaves_regret_zero():
    tree = leaves(1, {"a": 2, "b": 7})
    assert oracle.regret_bruteforce(tree, Player.P1) == 0
    assert oracle.regret_bruteforce(tree, Player.P2) == 0


def test_depth_one_tree_is_fixed_after_one_deletion():
    brute = oracle.iterated_bruteforce(leaves(1, {"a": 2, "b": 7}))
    assert brute.regrets == ((0, 0), (0, 0))
    assert brute.survivors(2, Player.P1) == [{"r": "a"}]
    # the opponent owns the root: nothing to delete
    assert oracle.iterated_bruteforce(leaves(2, {"a": 2, "b": 7})).star == 1


def test_opponent_choice_regret():
    tree = leaves(2, {"a": 1, "b": 4})
    assert oracle.regret_bruteforce(tree, Player.P1) == 0
    assert oracle.tree_strategy_regret(tree, Player.P2, {"r": "a"}) == 0


def test_guard():
    tree = generate.random_tree(3, 12)
    with pytest.raises(ResourceLimitError):
        oracle.iterated_bruteforce(tree, guard=2)


def test_not_a_tree():
    cyc = Arena.build([("a", 1), ("b", 2)], [("a", "b"), ("b", "a")], "a")
    with pytest.raises(ArenaError):
        oracle.strategy_count(cyc, Player.P1)


def test_project_keeps_reachable_choices():
    tree = leaves(1, {"a": 2, "b": 7})
    assert oracle.project(tree, {"r": "a"}, Player.P1, {"r", "a"}) == {"r": "a"}
    assert oracle.project(tree, {"r": "b"}, Player.P1, {"r", "a"}) is None


def test_graph_no_win_is_infinite():
    arena = Arena.build([("a", 1), ("b", 2), ("t", 1, True)], [("a", "b"), ("b", "b"), ("b", "t")], "a")
    assert oracle.graph_regret_bruteforce(arena, Player.P1) == INF


def test_graph_forced_play_is_zero():
    arena = Arena.build([("a", 2), ("t", 1, True)], [("a", "t", 5)], "a")
    assert oracle.graph_regret_bruteforce(arena, Player.P1) == 0


def test_graph_fixture_regret():
    assert oracle.graph_regret_bruteforce(fixtures.memory_example(), Player.P1) == 3


def test_bellman_ford_on_cycle():
    arena = Arena.build([("a", 1), ("b", 2), ("t", 1, True)], [("a", "b", 1), ("b", "a", 1), ("b", "t", 4)], "a")
    assert oracle.bellman_ford_best(arena, Player.P1) == [5, 4, 0]


def test_nash_outcomes_of_a_choice():
    assert oracle.nash_outcomes(leaves(1, {"a": 2, "b": 7})) == {(2, 0)}
