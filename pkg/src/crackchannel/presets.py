"""Channel geometries from the worked examples.

Both channels have two rows of nine defects with half-length 0.1, standoff
1.2 and spacing 1. Columns sit at x = 1, ..., 9 and the crack tip starts at
x = 0.5; the load point is placed ``a`` behind the initial tip, so with
``a = 0.5`` the x coordinate coincides with the distance from the load point.
"""

from __future__ import annotations

import math

from .config import ArrayGenerator, RunConfig
from .model import Bimaterial, DefectKind, LoadCase

COLUMNS = 9
STANDOFF = 1.2
SPACING = 1.0
HALF_LENGTH = 0.1
FIRST_COLUMN = 1.0
TIP_X = 0.5


def channel_centre() -> float:
    return FIRST_COLUMN + 0.5 * (COLUMNS - 1) * SPACING


def _row(kind, side, offset=0.0) -> ArrayGenerator:
    return ArrayGenerator(kind, side, COLUMNS, FIRST_COLUMN, SPACING, STANDOFF, HALF_LENGTH, offset)


def microcrack_channel(alpha: float, a: float = 0.5, material: Bimaterial | None = None) -> RunConfig:
    """Microcracks at ``alpha`` above and perpendicular ones (``alpha - pi/2``) below."""
    return RunConfig(
        material or Bimaterial(1.0, 1.0),
        LoadCase(1.0, TIP_X - a),
        TIP_X,
        alpha,
        (_row(DefectKind.MICROCRACK, "upper"),
         _row(DefectKind.MICROCRACK, "lower", -0.5 * math.pi)),
    )


def mixed_channel(alpha: float, a: float = 0.5, material: Bimaterial | None = None) -> RunConfig:
    """Rigid line inclusions above, microcracks below, all at ``alpha``."""
    return RunConfig(
        material or Bimaterial(1.0, 1.0),
        LoadCase(1.0, TIP_X - a),
        TIP_X,
        alpha,
        (_row(DefectKind.RIGID_LINE_INCLUSION, "upper"),
         _row(DefectKind.MICROCRACK, "lower")),
    )
