"""Shielding-amplification diagrams over tip position and defect inclination."""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .config import RunConfig, default_alpha_grid, expand_defects
from .field import k0
from .perturbation import DefectTable, delta_k_arrays, ordered_sum

THREADS_ENV = "CRACKCHANNEL_THREADS"


class CellClass(enum.Enum):
    AMPLIFICATION = "Amplification"
    SHIELDING = "Shielding"
    NEUTRAL = "Neutral"
    ERROR = "Error"


def classify(relative: float, neutral_tol: float = 1e-12) -> CellClass:
    if not math.isfinite(relative):
        return CellClass.ERROR
    if relative > neutral_tol:
        return CellClass.AMPLIFICATION
    if relative < -neutral_tol:
        return CellClass.SHIELDING
    return CellClass.NEUTRAL


@dataclass(frozen=True)
class DiagramGrid:
    """``relative[i, k]`` is the total dK/K0 with the tip at ``x_tip[i]`` and inclination ``alpha[k]``.

    ``x`` is the distance from the load point (``x_tip - load_x``). Cells that
    could not be evaluated hold NaN and class ``Error``.
    """

    x: np.ndarray
    x_tip: np.ndarray
    alpha: np.ndarray
    relative: np.ndarray
    neutral_tol: float

    @property
    def classes(self) -> np.ndarray:
        out = np.empty(self.relative.shape, dtype=object)
        for idx, value in np.ndenumerate(self.relative):
            out[idx] = classify(value, self.neutral_tol)
        return out

    def sign(self) -> np.ndarray:
        """+1 amplification, -1 shielding, 0 neutral, NaN error."""
        r = self.relative
        s = np.where(r > self.neutral_tol, 1.0, np.where(r < -self.neutral_tol, -1.0, 0.0))
        return np.where(np.isfinite(r), s, np.nan)


def default_threads() -> int:
    value = os.environ.get(THREADS_ENV)
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            pass
    return os.cpu_count() or 1


def default_x_grid(run: RunConfig) -> np.ndarray:
    """Tip positions from the diagram settings, defaulting to the initial tip through one spacing past the last defect."""
    settings = run.diagram
    spacing = run.spacing()
    xs = [e.defect.x for e in expand_defects(run)]
    x_min = run.tip_x if settings.x_min is None else settings.x_min
    x_max = (max(xs) + spacing if xs else run.tip_x + spacing) if settings.x_max is None else settings.x_max
    step = spacing / 50.0 if settings.x_step is None else settings.x_step
    n = int(math.floor((x_max - x_min) / step + 1e-9)) + 1
    return x_min + step * np.arange(max(n, 1))


def _row(run, table, offsets, rotates, x_tip, alphas):
    a = x_tip - run.load.load_x
    if not a > 0:
        return np.full(alphas.shape, np.nan)
    if len(table) == 0:
        return np.zeros(alphas.shape)
    d = np.hypot(table.x - x_tip, table.y)
    if np.any(d <= run.solver.validity_ratio * table.s):
        return np.full(alphas.shape, np.nan)
    angles = np.where(rotates, alphas[:, None] + offsets[None, :], table.angle[None, :])
    dk = delta_k_arrays(table, x_tip, a, run.load.force, run.material, angle=angles)
    rel = ordered_sum(dk) / k0(run.load.force, a)
    crossing = np.any(np.abs(table.y) <= table.s * np.abs(np.sin(angles)), axis=-1)
    return np.where(crossing, np.nan, rel)


def diagram(
    run: RunConfig,
    x_tip: Optional[Sequence[float]] = None,
    alpha: Optional[Sequence[float]] = None,
    threads: Optional[int] = None,
) -> DiagramGrid:
    """Evaluate and classify the relative perturbation on an (x, alpha) lattice.

    Array-generated defects are rotated to each alpha (keeping their per-row
    offsets); explicit defects keep their angles. Rows run on a thread pool and
    are assembled by index, so the result does not depend on ``threads``.
    """
    expanded = expand_defects(run)
    table = DefectTable([e.defect for e in expanded])
    offsets = np.array([e.offset for e in expanded], dtype=float)
    rotates = np.array([e.rotates for e in expanded], dtype=bool)
    xs = default_x_grid(run) if x_tip is None else np.asarray(x_tip, dtype=float)
    alphas = default_alpha_grid(run.diagram.n_alpha) if alpha is None else np.asarray(alpha, dtype=float)

    threads = default_threads() if threads is None else max(1, int(threads))
    rows: list[np.ndarray] = [None] * len(xs)  # type: ignore[list-item]

    def work(i):
        rows[i] = _row(run, table, offsets, rotates, float(xs[i]), alphas)

    if threads == 1 or len(xs) < 2:
        for i in range(len(xs)):
            work(i)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, range(len(xs))))

    relative = np.vstack(rows) if rows else np.zeros((0, len(alphas)))
    return DiagramGrid(xs - run.load.load_x, xs, alphas, relative, run.diagram.neutral_tol)
