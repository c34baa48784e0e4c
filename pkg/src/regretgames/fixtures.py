"""Bundled example games, loaded from the package's ``data`` directory."""
from __future__ import annotations

from importlib import resources

from .arena import Arena
from .docio import load_arena, load_matrix
from .matrix_irm import MatrixGame

_ARENAS = ("memory_arena", "centipede")
_MATRICES = ("penalty_matrix",)


def names() -> tuple[str, ...]:
    return _ARENAS + _MATRICES


def text(name: str) -> str:
    if name not in names():
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(names())}")
    return resources.files("regretgames").joinpath("data").joinpath(f"{name}.json").read_text()


def arena(name: str) -> Arena:
    return load_arena(text(name))


def matrix(name: str) -> MatrixGame:
    return load_matrix(text(name))


def memory_example() -> Arena:
    """Ten-position game in which Player 1 needs memory; regret 3 for Player 1."""
    return arena("memory_arena")


def centipede() -> Arena:
    """Five-round centipede tree: eleven positions, both players share the stop targets."""
    return arena("centipede")


def penalty_matrix() -> MatrixGame:
    """2x2 game whose iterated regret survivors are ``({B1}, {A2})``."""
    return matrix("penalty_matrix")
