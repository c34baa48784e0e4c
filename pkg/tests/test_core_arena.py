import pytest
from hypothesis import given
from hypothesis import strategies as st

from regretgames import fixtures, generate, oracle
from regretgames.arena import (
    Arena,
    Play,
    Player,
    TargetWeightedArena,
    edge_tree_to_leaf_twa,
    is_tree,
    is_twa,
    opponent,
    outcome,
    play_utilities,
    utility,
    validate,
)
from regretgames.errors import ArenaError, StrategyError
from regretgames.extnat import INF, emin, from_json, monus, normalize, sub, to_json
from regretgames.strategy import (
    FiniteMemoryStrategy,
    MemorylessStrategy,
    all_memoryless_strategies,
    legality_violations,
    smallest_successor_strategy,
)

nat = st.integers(min_value=0, max_value=10**6)
ext = st.one_of(nat, st.just(INF))


# -- extended naturals -------------------------------------------------


def test_infinity_arithmetic():
    assert sub(INF, INF) == INF
    assert sub(INF, 3) == INF
    assert emin([]) == INF
    assert monus(INF, INF) == INF
    assert monus(5, INF) == 0
    with pytest.raises(ValueError):
        sub(3, INF)


@given(ext, ext)
def test_monus_never_negative(a, b):
    m = monus(a, b)
    assert m >= 0
    assert m <= a


@given(ext)
def test_json_roundtrip(x):
    assert from_json(to_json(x)) == x
    assert normalize(x) == x


def test_opponent_involution():
    for p in Player:
        assert opponent(opponent(p)) == p
        assert p.opponent != p


# -- validation ---------------------------------------------------------


def two_positions(**kw):
    return Arena.build([("a", 1), ("b", 2, True, True)], [("a", "b", 2, 3)], "a", **kw)


def test_valid_two_position_arena():
    assert validate(two_positions()) == []


def test_edge_to_undeclared_position():
    arena = Arena.build([("a", 1)], [("a", "zz")], "a")
    problems = validate(arena)
    assert len(problems) == 1 and "'a' -> 'zz'" in problems[0]


def test_initial_missing():
    problems = validate(Arena.build([("a", 1)], [], "nope"))
    assert any(v.startswith("initial missing") for v in problems)


def test_duplicates_and_weights_rejected():
    arena = Arena.build([("a", 1), ("a", 2)], [("a", "a", 1), ("a", "a", -1)], "a")
    problems = validate(arena)
    assert any("duplicate position" in v for v in problems)
    assert any("duplicate edge" in v for v in problems)
    assert any("nonnegative" in v for v in problems)
    with pytest.raises(ArenaError) as info:
        arena.check()
    assert info.value.violations == problems


def test_max_weight_and_successor_order():
    arena = Arena.build([("s", 1), ("b", 1), ("a", 2)], [("s", "b", 4, 1), ("s", "a", 0, 7)], "s")
    assert arena.successors("s") == ["a", "b"]
    assert arena.max_weight(Player.P1) == 4
    assert arena.max_weight(Player.P2) == 7
    assert arena.max_weight() == 7


# -- utilities and outcomes ----------------------------------------------


def test_utility_conventions():
    arena = Arena.build(
        [("s", 1), ("a", 1), ("t", 1, True), ("x", 2)],
        [("s", "a", 2), ("a", "t", 3), ("a", "x"), ("x", "x")],
        "s",
    )
    assert utility(arena, ["s", "a", "t"], Player.P1) == 5
    # initial position in the target set: empty sum
    assert utility(arena, ["t"], Player.P1, root="t") == 0
    assert utility(arena, ["s", "a", "x", "x"], Player.P1) == INF
    assert utility(arena, ["s", "a", "t"], Player.P2) == INF
    with pytest.raises(ArenaError):
        utility(arena, ["s", "t"], Player.P1)


def test_outcome_on_a_line():
    arena = Arena.build([("a", 1), ("b", 2), ("c", 1, True, True)], [("a", "b"), ("b", "c")], "a")
    s1 = smallest_successor_strategy(arena, Player.P1)
    s2 = smallest_successor_strategy(arena, Player.P2)
    assert outcome(arena, s1, s2).positions == ("a", "b", "c")
    assert outcome(arena, s1, s2) == outcome(arena, s1, s2)


def test_outcome_lasso_misses_target():
    arena = Arena.build([("a", 1), ("b", 2), ("t", 1, True)], [("a", "b"), ("b", "a"), ("a", "t")], "a")
    s1 = MemorylessStrategy(Player.P1, {"a": "b", "t": None})
    s2 = MemorylessStrategy(Player.P2, {"b": "a"})
    play = outcome(arena, s1, s2)
    assert play.loop_start == 0 and play.positions == ("a", "b")
    assert utility(arena, play, Player.P1) == INF


def test_outcome_memory_example():
    arena = fixtures.memory_example()
    l1 = MemorylessStrategy(Player.P1, {"B": "C", "C": "E", "E": None, "G": None, "H": None, "I": None, "J": None})
    l2 = MemorylessStrategy(Player.P2, {"A": "B", "D": "H", "F": "J"})
    play = outcome(arena, l1, l2)
    assert play.positions == ("A", "B", "C", "E")
    assert utility(arena, play, Player.P1) == 3


def test_strategy_protocol():
    arena = Arena.build([("a", 1), ("b", 1), ("t", 2, True)], [("a", "b"), ("a", "t"), ("b", "a")], "a")
    assert legality_violations(arena, MemorylessStrategy(Player.P1, {"a": "t", "b": "a"})) == []
    assert legality_violations(arena, MemorylessStrategy(Player.P1, {"a": "zz"}))
    assert len(list(all_memoryless_strategies(arena, Player.P1))) == 2
    # alternate between the two moves out of "a"
    fm = FiniteMemoryStrategy(
        Player.P1,
        0,
        {(0, "a"): "b", (1, "a"): "t", (0, "b"): "a", (1, "b"): "a"},
        {(0, "a", "b"): 1, (1, "b", "a"): 1, (1, "a", "t"): 1, (0, "b", "a"): 0, (1, "a", "b"): 1, (0, "a", "t"): 0},
    )
    other = MemorylessStrategy(Player.P2, {"t": None})
    assert outcome(arena, fm, other).positions == ("a", "b", "a", "t")
    assert fm.memory_alphabet == {0, 1}
    with pytest.raises(StrategyError):
        fm.move(7, "a")


# -- trees ------------------------------------------------------------------


def test_leaf_twa_single_edge():
    tree = Arena.build([("r", 1), ("l", 2, True, True)], [("r", "l", 2, 7)], "r")
    twa = edge_tree_to_leaf_twa(tree)
    assert (twa.weights1["l"], twa.weights2["l"]) == (2, 7)


def test_leaf_twa_missed_target():
    tree = Arena.build([("r", 1), ("l", 2, False, True)], [("r", "l", 2, 7)], "r")
    twa = edge_tree_to_leaf_twa(tree)
    assert (twa.weights1["l"], twa.weights2["l"]) == (INF, 7)


def test_leaf_twa_five_leaves():
    tree = Arena.build(
        [("r", 1), ("x", 2, True, False), ("y", 1), ("l1", 1, True, True), ("l2", 1, False, True),
         ("l3", 2, True, True), ("l4", 2, False, False), ("l5", 1, True, True)],
        [("r", "x", 1, 2), ("r", "y", 3, 0), ("x", "l1", 4, 1), ("x", "l2", 2, 2), ("y", "l3", 1, 1),
         ("y", "l4", 5, 5), ("y", "l5", 0, 3)],
        "r",
    )
    twa = edge_tree_to_leaf_twa(tree)
    for leaf in ("l1", "l2", "l3", "l4", "l5"):
        path = {"l1": ["r", "x", "l1"], "l2": ["r", "x", "l2"], "l3": ["r", "y", "l3"],
                "l4": ["r", "y", "l4"], "l5": ["r", "y", "l5"]}[leaf]
        assert twa.weights1[leaf] == utility(tree, path, Player.P1)
        assert twa.weights2[leaf] == utility(tree, path, Player.P2)
    assert twa.weights1["l1"] == 1  # x is already a target of player 1


@given(st.integers(0, 10**6), st.integers(1, 7))
def test_leaf_twa_preserves_utilities(seed, leaves):
    tree = generate.random_tree(seed, leaves, 5)
    twa = edge_tree_to_leaf_twa(tree)
    for s1 in oracle.tree_strategies(tree, Player.P1):
        for s2 in oracle.tree_strategies(tree, Player.P2):
            path = oracle.tree_outcome(tree, s1, s2)
            for p in Player:
                assert utility(tree, path, p) == utility(twa, path, p)


@given(st.integers(0, 10**6))
def test_utility_nonnegative_and_inf_iff_missed(seed):
    arena = generate.random_arena(seed, 5, 3)
    s1 = smallest_successor_strategy(arena, Player.P1)
    s2 = smallest_successor_strategy(arena, Player.P2)
    play = outcome(arena, s1, s2)
    for p, u in zip(Player, play_utilities(arena, play)):
        assert u >= 0
        assert (u == INF) == (not any(arena.is_target(s, p) for s in play.positions))


def test_random_generators_shape():
    assert is_twa(generate.random_twa(3, 8))
    assert is_tree(generate.random_tree(3, 9))
    tree = generate.random_tree(3, 9)
    assert sum(1 for s in tree.ids if not tree.successors(s)) == 9
    a = generate.random_positive_arena(3, 4, 2)
    assert all(e.w1 >= 1 and e.w2 >= 1 for e in a.edges)
    assert generate.random_arena(11, 6) == generate.random_arena(11, 6)


def test_twa_from_arena_rejects_non_twa():
    arena = Arena.build([("a", 1), ("b", 1)], [("a", "b", 1)], "a")
    with pytest.raises(ArenaError):
        TargetWeightedArena.from_arena(arena)


def test_play_object():
    p = Play(["a", "b"], loop_start=1)
    assert len(p) == 2 and p.last == "b"
