"""Weight data attached to a region: the torus weights of V and of U_1, U_2, U_3.

Everything is multiplicity free, so a subspace spanned by weight vectors is
recorded by its set of weights, and a direct sum decomposition is a
partition of weight sets.  Weights x_i - x_j are stored as pairs (i, j).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .game import GameError, GamePosition, Square

Weight = tuple[int, int]


@dataclass(frozen=True)
class WeightDatum:
    weightsV: frozenset
    weightsU: tuple[frozenset, frozenset, frozenset]
    labels: tuple[int, int, int] = (1, 2, 3)
    # weights of V whose square has no second-label token
    weightsU_not2: frozenset = field(default=frozenset())

    def __post_init__(self):
        for part in self.weightsU:
            if not part <= self.weightsV:
                raise ValueError("U weights must lie in V")

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "V": sorted(map(list, self.weightsV)),
            "U": [sorted(map(list, u)) for u in self.weightsU],
            "U_not2": sorted(map(list, self.weightsU_not2)),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def weight_datum(pos: GamePosition, region: Square, labels: tuple[int, int, int] = (1, 2, 3)) -> WeightDatum:
    """The pair (V, U) for the region whose id is ``region``."""
    if len(labels) != 3:
        raise ValueError("exactly three labels are needed")
    try:
        squares = pos.region(region)
    except (KeyError, GameError) as exc:
        raise GameError(f"unknown region {region}") from exc
    v = frozenset(squares)
    us = tuple(frozenset(sq for sq in squares if k <= 64 and pos.mask_at(sq) >> (k - 1) & 1)
               for k in labels)
    not2 = v - us[1]
    return WeightDatum(v, us, tuple(labels), not2)


def is_transverse(datum: WeightDatum) -> bool:
    """V is the direct sum of U_1, U_2, U_3."""
    u1, u2, u3 = datum.weightsU
    if u1 & u2 or u1 & u3 or u2 & u3:
        return False
    return (u1 | u2 | u3) == datum.weightsV


def transverse_replacing_first(datum: WeightDatum) -> bool:
    """Transversality of (U_not2, U_2, U_3)."""
    _, u2, u3 = datum.weightsU
    return is_transverse(WeightDatum(datum.weightsV, (datum.weightsU_not2, u2, u3), datum.labels))
