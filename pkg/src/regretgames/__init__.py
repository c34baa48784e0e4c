"""Regret and iterated regret minimization for two-player reachability games on weighted graphs."""
from .arena import Arena, Edge, Play, Player, Position, TargetWeightedArena, utility, validate
from .errors import ArenaError, RegretGamesError, ResourceLimitError, StrategyError
from .extnat import INF
from .strategy import FiniteMemoryStrategy, MemorylessStrategy

__all__ = [
    "INF",
    "Arena",
    "ArenaError",
    "Edge",
    "FiniteMemoryStrategy",
    "MemorylessStrategy",
    "Play",
    "Player",
    "Position",
    "RegretGamesError",
    "ResourceLimitError",
    "StrategyError",
    "TargetWeightedArena",
    "utility",
    "validate",
]
__version__ = "0.1.0"
