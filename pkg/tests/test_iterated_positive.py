import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import oracle_bound
from regretgames import fixtures, generate, iterated_positive as ip, oracle
from regretgames.arena import Arena, Edge, Player, outcome, utility
from regretgames.errors import ArenaError, ResourceLimitError
from regretgames.extnat import INF


def test_bounds_formula():
    two = Arena.build([("a", 1), ("b", 2)], [("a", "b", 1, 1)], "a")
    assert ip.bounds(two) == (12, 12)
    three = Arena.build([("a", 1), ("b", 2), ("c", 1)], [("a", "b", 2, 1), ("b", "c", 1, 1)], "a")
    assert ip.bounds(three) == (144, 288)
    # the chain 2M|S| <= 2M^2|S| <= 3M^2|S| <= 6M^2|S| <= 6M^3|S| ends at b
    m, n = 2, 3
    assert 2 * m * n <= 2 * m**2 * n <= 3 * m**2 * n <= 6 * m**2 * n <= 6 * m**3 * n == ip.bounds(three)[0]


def test_zero_weights_rejected():
    arena = Arena.build([("a", 1), ("b", 2)], [("a", "b", 1, 0)], "a")
    assert ip.positivity_violations(arena)
    with pytest.raises(ArenaError):
        ip.bounds(arena)
    with pytest.raises(ArenaError):
        ip.iterated_regret(arena)


def test_unfold_single_edge():
    arena = Arena.build([("s", 1), ("t", 2, True, True)], [("s", "t", 2, 1)], "s")
    unf = ip.unfold(arena, 2)
    assert len(unf) == 2
    assert sorted(unf.position.values()) == ["s", "t"]


def test_unfold_self_loop_depth():
    arena = Arena.build([("s", 1), ("t", 2, True, True)], [("s", "s", 1, 1), ("s", "t", 1, 1)], "s")
    unf = ip.unfold(arena, 3)
    loops = max(play.count("s") - 1 for play in unf.play.values())
    assert loops == 3
    assert len(unf) == ip.count_plays(arena, 3)


def test_cap_reports_required_size():
    arena = Arena.build([("s", 1), ("t", 2)], [("s", "t", 1, 1), ("t", "s", 1, 1), ("s", "s", 1, 1)], "s")
    need = ip.count_plays(arena, 12)
    with pytest.raises(ResourceLimitError) as info:
        ip.unfold(arena, 12, ip.UnfoldConfig(cap=50))
    assert info.value.limit == 50 and info.value.required == need
    assert "50" in str(info.value) and str(need) in str(info.value)


def test_config_validation():
    with pytest.raises(ValueError):
        ip.UnfoldConfig(cap=0)
    with pytest.raises(ValueError):
        ip.UnfoldConfig(bound=-1)


@given(st.integers(0, 10**6), st.integers(2, 4), st.integers(1, 5))
def test_unfolding_respects_bound(seed, n, bound):
    arena = generate.random_positive_arena(seed, n, 2)
    unf = ip.unfold(arena, bound)
    assert len(unf) == ip.count_plays(arena, bound)
    for node, play in unf.play.items():
        for p in (1, 2):
            acc = sum(arena.weight(a, b, p) for a, b in zip(play, play[1:]))
            assert acc <= bound
        assert unf.position[node] == play[-1]
    ids = sorted(unf.tree.ids)
    assert ids[0] == unf.tree.initial


def test_forced_two_positions():
    arena = Arena.build([("a", 1), ("t", 2, True, True)], [("a", "t", 1, 2)], "a")
    rep = ip.iterated_regret(arena)
    assert rep.regrets == ((0, 0),)
    assert rep.star == 1


def test_positive_centipede_variant():
    base = fixtures.centipede()
    shifted = Arena(base.positions, base.initial, tuple(Edge(e.src, e.dst, e.w1 + 1, e.w2 + 1) for e in base.edges))
    rep = ip.iterated_regret(shifted, ip.UnfoldConfig(cap=10**5))
    assert rep.final == (0, 0)
    assert len(rep.unfolding) == 11
    assert rep.regrets == oracle.iterated_bruteforce(rep.unfolding.tree).regrets


def test_player_one_never_wins():
    # player 1 has no target; player 2 can reach hers
    arena = Arena.build(
        [("a", 1), ("b", 2), ("c", 1, False, True)],
        [("a", "b", 1, 1), ("a", "c", 2, 2), ("b", "a", 1, 1), ("b", "c", 1, 1)],
        "a",
    )
    rep = ip.iterated_regret(arena, ip.UnfoldConfig(bound=6))
    assert all(r1 == INF for r1, _ in rep.regrets)
    assert rep.final[1] != INF
    assert rep.regrets == oracle.iterated_bruteforce(rep.unfolding.tree).regrets


@given(st.integers(0, 10**6), st.integers(2, 4))
def test_matches_oracle_on_unfolding(seed, n):
    arena = generate.random_positive_arena(seed, n, 2)
    bound = oracle_bound(arena)
    assert bound is not None
    rep = ip.iterated_regret(arena, ip.UnfoldConfig(cap=10**5, bound=bound))
    assert rep.regrets == oracle.iterated_bruteforce(rep.unfolding.tree).regrets
    for a, b in zip(rep.regrets, rep.regrets[1:]):
        assert b[0] <= a[0] and b[1] <= a[1]


@given(st.integers(0, 10**6), st.integers(2, 4))
def test_mapped_back_witnesses_replay_the_tree(seed, n):
    arena = generate.random_positive_arena(seed, n, 2)
    rep = ip.iterated_regret(arena, ip.UnfoldConfig(bound=3))
    tw = rep.tree_report.witnesses
    unf = rep.unfolding
    tree_play = outcome(unf.tree, tw[1], tw[2])
    arena_play = outcome(arena, rep.witnesses[1], rep.witnesses[2])
    projected = tuple(unf.position[x] for x in tree_play.positions)
    assert arena_play.positions[: len(projected)] == projected
    for p in Player:
        u = utility(arena, arena_play, p)
        if u <= rep.bound:
            assert u == utility(unf.tree, tree_play, p)
