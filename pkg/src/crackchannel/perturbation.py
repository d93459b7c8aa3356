"""Stress intensity factor perturbations produced by small defects.

Every Delta K reported here is the physical (already scaled) value: the
defect size enters through the physical half-length ``s`` in the dipole
matrix, so no separate small parameter is ever applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .dipole import dipole_matrix
from .field import UnperturbedTip, gradient_arrays, grad_u0, k0
from .model import (
    Bimaterial,
    Configuration,
    Defect,
    DefectKind,
    DefectPolar,
    DomainError,
    LoadCase,
    SingularityError,
    TipState,
    to_polar,
)

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


@dataclass(frozen=True)
class WeightVector:
    c1: float
    c2: float

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2])


def weight_vector(polar: DefectPolar) -> WeightVector:
    """(-sin(3 phi/2), cos(3 phi/2)) / (2 d^{3/2})."""
    if not polar.d > 0:
        raise DomainError(f"distance must be positive, got d={polar.d!r}")
    scale = 0.5 * polar.d ** -1.5
    return WeightVector(-math.sin(1.5 * polar.phi) * scale, math.cos(1.5 * polar.phi) * scale)


def delta_k_defect(defect: Defect, tip: TipState, material: Bimaterial, load: LoadCase) -> float:
    """SIF perturbation of one defect, composed from the field, dipole and weight pieces."""
    polar = to_polar(defect, tip)
    grad = grad_u0((defect.x, defect.y), material, load, tip).as_array()
    m = dipole_matrix(defect.kind, defect.half_length, defect.angle).as_array()
    c = weight_vector(polar).as_array()
    return -SQRT_2_OVER_PI * material.effective * float(grad @ m @ c)


def delta_k_advance(phi_step: float, a0: float) -> float:
    """SIF perturbation of a straight tip advance ``phi_step`` (physical length)."""
    return 0.5 * phi_step * a0


@dataclass(frozen=True)
class PerturbationResult:
    per_defect: tuple[float, ...]
    total: float
    relative: float
    k0: float


class DefectTable:
    """Column arrays of a defect list, built once and reused every step."""

    def __init__(self, defects: Sequence[Defect]):
        self.defects = tuple(defects)
        self.x = np.array([d.x for d in defects], dtype=float)
        self.y = np.array([d.y for d in defects], dtype=float)
        self.s = np.array([d.half_length for d in defects], dtype=float)
        self.angle = np.array([d.angle for d in defects], dtype=float)
        self.microcrack = np.array(
            [d.kind is DefectKind.MICROCRACK for d in defects], dtype=bool
        )
        self.upper = self.y > 0

    def __len__(self) -> int:
        return len(self.defects)


def delta_k_arrays(
    table: DefectTable,
    x_tip: float,
    a: float,
    force: float,
    material: Bimaterial,
    angle: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Per-defect Delta K for one tip position.

    ``angle`` overrides the stored inclinations and may carry leading batch
    axes, e.g. shape ``(n_alpha, n_defects)`` for a diagram row.
    """
    dx = table.x - x_tip
    d = np.hypot(dx, table.y)
    if np.any(d == 0.0):
        idx = int(np.flatnonzero(d == 0.0)[0])
        raise SingularityError(f"defect {idx}: defect at tip")
    phi = np.arctan2(table.y, dx)
    gx, gy = gradient_arrays(dx, table.y, table.upper, force, a,
                             material.mu_plus, material.mu_minus)
    scale = 0.5 * d ** -1.5
    c1 = -np.sin(1.5 * phi) * scale
    c2 = np.cos(1.5 * phi) * scale

    alpha = table.angle if angle is None else angle
    c2a, s2a = np.cos(2.0 * alpha), np.sin(2.0 * alpha)
    half = 0.5 * math.pi * table.s**2
    sign = np.where(table.microcrack, -1.0, 1.0)
    # microcrack: -half*(1 - cos, -sin, 1 + cos); rigid: half*(1 + cos, sin, 1 - cos)
    m11 = half * (1.0 + sign * c2a) * sign
    m22 = half * (1.0 - sign * c2a) * sign
    m12 = half * s2a

    contraction = gx * (m11 * c1 + m12 * c2) + gy * (m12 * c1 + m22 * c2)
    return -SQRT_2_OVER_PI * material.effective * contraction


def ordered_sum(values: np.ndarray) -> np.ndarray:
    """Sum over the last axis strictly in input order."""
    values = np.asarray(values)
    total = np.zeros(values.shape[:-1])
    for j in range(values.shape[-1]):
        total = total + values[..., j]
    return total


def relative_perturbation(
    config: Configuration,
    tip: Optional[TipState] = None,
    table: Optional[DefectTable] = None,
) -> PerturbationResult:
    """Per-defect perturbations, their total, and total / K0 at a tip state.

    ``relative > 0`` is amplification, ``< 0`` shielding.
    """
    tip = config.tip if tip is None else tip
    k = k0(config.load.force, tip.a)
    if not config.defects:
        return PerturbationResult((), 0.0, 0.0, k)
    table = DefectTable(config.defects) if table is None else table
    dk = delta_k_arrays(table, tip.x_tip, tip.a, config.load.force, config.material)
    per = tuple(float(v) for v in dk)
    total = 0.0
    for v in per:
        total += v
    return PerturbationResult(per, total, total / k, k)


def unperturbed(config: Configuration, tip: Optional[TipState] = None) -> UnperturbedTip:
    tip = config.tip if tip is None else tip
    return UnperturbedTip.of(config.load.force, tip.a)
