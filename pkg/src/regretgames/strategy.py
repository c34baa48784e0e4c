"""Strategy representations.

Both kinds expose the same small protocol used by :func:`~regretgames.arena.outcome`:

* ``initial`` -- the memory state before the first move;
* ``move(memory, position)`` -- the chosen successor (``None`` at a dead end);
* ``update(memory, position, successor)`` -- the memory after the edge
  ``position -> successor`` has been taken, by either player.

A memoryless strategy ignores its memory (always ``None``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Mapping, Optional, Union

from .arena import Arena, Player
from .errors import StrategyError


@dataclass(frozen=True)
class MemorylessStrategy:
    player: Player
    choices: Mapping[str, Optional[str]]

    initial = None

    @property
    def kind(self) -> str:
        return "memoryless"

    @property
    def memory_alphabet(self) -> frozenset:
        return frozenset({None})

    def move(self, memory, position: str) -> Optional[str]:
        try:
            return self.choices[position]
        except KeyError:
            raise StrategyError(f"memoryless strategy of player {int(self.player)} undefined at {position!r}") from None

    def update(self, memory, position: str, successor: str):
        return None


@dataclass(frozen=True)
class FiniteMemoryStrategy:
    """A Mealy-style strategy given by explicit tables.

    ``moves`` is keyed by ``(memory, position)`` for positions owned by the
    player; ``updates`` by ``(memory, position, successor)`` for every edge
    the strategy may observe.  Tables only list reachable combinations.
    """

    player: Player
    initial: Hashable
    moves: Mapping[tuple, Optional[str]]
    updates: Mapping[tuple, Hashable]
    description: str = ""

    @property
    def kind(self) -> str:
        return "finite-memory"

    @cached_property
    def memory_alphabet(self) -> frozenset:
        mems = {self.initial}
        mems.update(m for m, _ in self.moves)
        mems.update(m for m, _, _ in self.updates)
        mems.update(self.updates.values())
        return frozenset(mems)

    def move(self, memory, position: str) -> Optional[str]:
        try:
            return self.moves[(memory, position)]
        except KeyError:
            raise StrategyError(
                f"strategy of player {int(self.player)} undefined at {position!r} with memory {memory!r}"
            ) from None

    def update(self, memory, position: str, successor: str):
        try:
            return self.updates[(memory, position, successor)]
        except KeyError:
            raise StrategyError(
                f"no memory update for {position!r} -> {successor!r} with memory {memory!r}"
            ) from None


Strategy = Union[MemorylessStrategy, FiniteMemoryStrategy]


def legality_violations(arena: Arena, strategy: MemorylessStrategy) -> list[str]:
    """Check a memoryless strategy against the arena's edges and ownership."""
    out = []
    for pos, nxt in strategy.choices.items():
        if pos not in arena:
            out.append(f"{pos!r} is not a position")
            continue
        if arena.owner(pos) != strategy.player:
            out.append(f"{pos!r} is not owned by player {int(strategy.player)}")
        succ = arena.successors(pos)
        if nxt is None:
            if succ:
                out.append(f"{pos!r} has successors but the strategy returns no move")
        elif nxt not in succ:
            out.append(f"{pos!r} -> {nxt!r} is not an edge")
    return out


def smallest_successor_strategy(arena: Arena, player: Player) -> MemorylessStrategy:
    """The deterministic default: every owned position moves to its smallest successor."""
    choices = {}
    for p in arena.ids:
        if arena.owner(p) == player:
            succ = arena.successors(p)
            choices[p] = succ[0] if succ else None
    return MemorylessStrategy(player, choices)


def all_memoryless_strategies(arena: Arena, player: Player):
    """Enumerate every memoryless strategy of ``player`` (lexicographic by position id)."""
    import itertools

    owned = [p for p in arena.ids if arena.owner(p) == player]
    options = [arena.successors(p) or [None] for p in owned]
    for combo in itertools.product(*options):
        yield MemorylessStrategy(player, dict(zip(owned, combo)))
