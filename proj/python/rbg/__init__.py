"""Python bindings for the RBG reasoner."""

from ._rbg import (
    Game,
    GameState,
    Move,
    RbgError,
    compile,
    load_game,
    load_game_file,
    straightness,
)

__all__ = [
    "Game",
    "GameState",
    "Move",
    "RbgError",
    "compile",
    "load_game",
    "load_game_file",
    "straightness",
]
