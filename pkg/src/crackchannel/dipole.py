"""Dipole matrices of small line defects in antiplane shear."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import DefectKind, DomainError


@dataclass(frozen=True)
class DipoleMatrix:
    """Symmetric 2x2 matrix in the global frame, stored as its three entries."""

    m11: float
    m12: float
    m22: float

    @property
    def m21(self) -> float:
        return self.m12

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m12, self.m22]])

    @property
    def trace(self) -> float:
        return self.m11 + self.m22

    @property
    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m12


def dipole_matrix(kind: DefectKind, s: float, alpha: float) -> DipoleMatrix:
    """Dipole matrix of a microcrack or a movable rigid line inclusion.

    Parameters
    ----------
    kind : DefectKind
    s : float
        Physical half-length of the defect.
    alpha : float
        Inclination to the interface, radians.

    Notes
    -----
    Microcrack: ``-(pi s^2 / 2) [[1 - cos 2a, -sin 2a], [-sin 2a, 1 + cos 2a]]``.
    Rigid inclusion: ``(pi s^2 / 2) [[1 + cos 2a, sin 2a], [sin 2a, 1 - cos 2a]]``.
    """
    if not s > 0:
        raise DomainError(f"half-length must be positive, got s={s!r}")
    kind = DefectKind.parse(kind)
    c2, s2 = math.cos(2.0 * alpha), math.sin(2.0 * alpha)
    half = 0.5 * math.pi * s * s
    if kind is DefectKind.MICROCRACK:
        return DipoleMatrix(-half * (1.0 - c2), half * s2, -half * (1.0 + c2))
    return DipoleMatrix(half * (1.0 + c2), half * s2, half * (1.0 - c2))
