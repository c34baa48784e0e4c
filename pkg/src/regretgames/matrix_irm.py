"""Iterated regret minimization on explicit penalty matrices.

Rows are Player 1's strategies, columns Player 2's; every cell holds the
pair of penalties (lower is better).  The delete operator keeps, for each
player, exactly the strategies of minimal regret against the opponent's
current survivors.  Entries may be ``INF``, which is how the brute-force
oracle reuses this engine on game trees.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .extnat import INF, ExtNat, sub


@dataclass(frozen=True)
class MatrixGame:
    """``cells[r][c] = (penalty_1, penalty_2)``; optional row/column names."""

    cells: tuple
    row_names: tuple = ()
    col_names: tuple = ()

    def __post_init__(self):
        cells = tuple(tuple((a, b) for a, b in row) for row in self.cells)
        if not cells or not cells[0]:
            raise ValueError("matrix must be nonempty")
        width = len(cells[0])
        for r, row in enumerate(cells):
            if len(row) != width:
                raise ValueError(f"row {r} has {len(row)} cells, expected {width}")
            for c, pair in enumerate(row):
                for v in pair:
                    if v != INF and (isinstance(v, bool) or not isinstance(v, int) or v < 0):
                        raise ValueError(f"cell ({r}, {c}): penalty {v!r} is not a nonnegative integer")
        object.__setattr__(self, "cells", cells)
        rows = tuple(self.row_names) or tuple(f"r{r}" for r in range(len(cells)))
        cols = tuple(self.col_names) or tuple(f"c{c}" for c in range(width))
        if len(rows) != len(cells) or len(cols) != width:
            raise ValueError("row/column names do not match the matrix shape")
        object.__setattr__(self, "row_names", rows)
        object.__setattr__(self, "col_names", cols)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.cells), len(self.cells[0])

    def penalty(self, player: int, row: int, col: int) -> ExtNat:
        return self.cells[row][col][int(player) - 1]


@dataclass(frozen=True)
class SurvivorSets:
    rows: frozenset
    cols: frozenset

    def of(self, player: int) -> frozenset:
        return self.rows if int(player) == 1 else self.cols

    @classmethod
    def full(cls, game: MatrixGame) -> "SurvivorSets":
        m, n = game.shape
        return cls(frozenset(range(m)), frozenset(range(n)))


def strategy_regret(game: MatrixGame, player: int, index: int, survivors: SurvivorSets | None = None) -> ExtNat:
    """Worst-case regret of one strategy, all quantities restricted to ``survivors``."""
    sv = survivors or SurvivorSets.full(game)
    player = int(player)
    if index not in sv.of(player):
        raise ValueError(f"strategy {index} of player {player} is not a survivor")
    worst = 0
    if player == 1:
        for c in sv.cols:
            best = min(game.penalty(1, r, c) for r in sv.rows)
            worst = max(worst, sub(game.penalty(1, index, c), best))
    else:
        for r in sv.rows:
            best = min(game.penalty(2, r, c) for c in sv.cols)
            worst = max(worst, sub(game.penalty(2, r, index), best))
    return worst


def regrets(game: MatrixGame, survivors: SurvivorSets) -> tuple[dict, dict]:
    """Regret of every surviving strategy of each player."""
    rows, cols = sorted(survivors.rows), sorted(survivors.cols)
    cells = game.cells
    colmin = {c: min(cells[r][c][0] for r in rows) for c in cols}
    rowmin = {r: min(cells[r][c][1] for c in cols) for r in rows}
    return (
        {r: max(sub(cells[r][c][0], colmin[c]) for c in cols) for r in rows},
        {c: max(sub(cells[r][c][1], rowmin[r]) for r in rows) for c in cols},
    )


def delete(game: MatrixGame, survivors: SurvivorSets | None = None) -> SurvivorSets:
    """Keep, per player, every strategy of minimal regret."""
    sv = survivors or SurvivorSets.full(game)
    r1, r2 = regrets(game, sv)
    m1, m2 = min(r1.values()), min(r2.values())
    return SurvivorSets(frozenset(k for k, v in r1.items() if v == m1), frozenset(k for k, v in r2.items() if v == m2))


@dataclass(frozen=True)
class Rank:
    """One application of the delete operator: the sets it was applied to and the regrets there."""

    survivors: SurvivorSets
    regret1: ExtNat
    regret2: ExtNat


@dataclass(frozen=True)
class Iteration:
    ranks: tuple
    fixpoint: SurvivorSets

    @property
    def star(self) -> int:
        """First rank at which the delete operator removes nothing."""
        return len(self.ranks)

    @property
    def regrets(self) -> list[tuple]:
        return [(r.regret1, r.regret2) for r in self.ranks]


def iterate(game: MatrixGame, max_rank: int | None = None) -> Iteration:
    """Apply ``delete`` from the full sets until nothing changes (or ``max_rank`` ranks)."""
    sv = SurvivorSets.full(game)
    ranks = []
    while max_rank is None or len(ranks) < max_rank:
        r1, r2 = regrets(game, sv)
        m1, m2 = min(r1.values()), min(r2.values())
        ranks.append(Rank(sv, m1, m2))
        nxt = SurvivorSets(
            frozenset(k for k, v in r1.items() if v == m1), frozenset(k for k, v in r2.items() if v == m2)
        )
        if nxt == sv:
            break
        sv = nxt
    return Iteration(tuple(ranks), sv)


def from_utilities(u1: Sequence[Sequence[ExtNat]], u2: Sequence[Sequence[ExtNat]]) -> MatrixGame:
    """Pair two equally shaped penalty tables into a matrix game."""
    return MatrixGame(tuple(tuple(zip(a, b)) for a, b in zip(u1, u2)))
