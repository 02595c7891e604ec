"""Root games for Schubert calculus: the game, a solver, and combinatorial oracles."""

from .game import (GameError, GamePosition, Move, Split, WinMode, apply_action,
                   initial_position, is_won, legal_moves)
from .grassmann import GrassmannProblem, build_game, win_grassmannian
from .pictures import grassmann_intersection, lr_coefficient
from .schubert import flag_intersection
from .solver import Relabel, Verdict, solve, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "GameError", "GamePosition", "GrassmannProblem", "Move", "Relabel", "Split",
    "Verdict", "WinMode", "apply_action", "build_game", "flag_intersection",
    "grassmann_intersection", "initial_position", "is_won", "legal_moves",
    "lr_coefficient", "solve", "verify_certificate", "win_grassmannian",
]
