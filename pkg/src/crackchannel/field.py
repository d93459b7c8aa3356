"""Unperturbed antiplane field of a semi-infinite interface crack.

The crack lies on the negative real axis of the tip-relative complex plane
``zeta`` and is loaded by equal and opposite antiplane point forces ``F`` on
its faces at ``zeta = -a``. With

    f(zeta) = -(2 i F / pi) * arctan( sqrt(zeta / a) )

the displacement is ``u = Re f / mu_plus`` in the upper half-plane and
``u = -Re f(conj zeta) / mu_minus`` in the lower one. ``u`` vanishes on the
bonded line, tractions are continuous across it, and the crack faces are
traction free away from the load points. The branch cut of the square root
runs along the crack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import Bimaterial, DomainError, LoadCase, SingularityError, TipState


def k0(force: float, a: float) -> float:
    """Unperturbed stress intensity factor F * sqrt(2 / (pi a))."""
    if not a > 0:
        raise DomainError(f"load-tip distance must be positive, got a={a!r}")
    return force * math.sqrt(2.0 / (math.pi * a))


def a0(force: float, a: float) -> float:
    """Coefficient of the second-order near-tip term, -k0 / a."""
    return -k0(force, a) / a


@dataclass(frozen=True)
class UnperturbedTip:
    k0: float
    a0: float

    @classmethod
    def of(cls, force: float, a: float) -> "UnperturbedTip":
        k = k0(force, a)
        return cls(k, -k / a)


@dataclass(frozen=True)
class FieldGradient:
    gx: float
    gy: float

    def as_array(self) -> np.ndarray:
        return np.array([self.gx, self.gy])


def _check_regular(zeta, a):
    z = np.asarray(zeta)
    if np.any(z == 0):
        raise SingularityError("field evaluated at the crack tip")
    if np.any(z == -a):
        raise SingularityError("field evaluated at the load point")


def potential(zeta, force: float, a: float):
    """Auxiliary analytic potential f (exposed for testing)."""
    if not a > 0:
        raise DomainError(f"load-tip distance must be positive, got a={a!r}")
    _check_regular(zeta, a)
    return -(2j * force / math.pi) * np.arctan(np.sqrt(zeta) / math.sqrt(a))


def potential_derivative(zeta, force: float, a: float):
    """g = f' = -(F/pi) i sqrt(a) / (sqrt(zeta) (zeta + a)), principal sqrt.

    Accepts scalars or arrays. Points on the crack faces follow the sign of
    the imaginary zero, as numpy's principal square root does.
    """
    if not a > 0:
        raise DomainError(f"load-tip distance must be positive, got a={a!r}")
    _check_regular(zeta, a)
    return -(force / math.pi) * 1j * math.sqrt(a) / (np.sqrt(zeta) * (zeta + a))


def gradient_arrays(dx, y, upper, force, a, mu_plus, mu_minus):
    """Vectorised gradient of u0 at tip-relative offsets.

    ``upper`` selects the constitutive side for each point; ``y`` enters only
    through ``|y|`` so that face points never depend on a signed zero.
    Returns ``(gx, gy)`` arrays broadcast over the inputs.
    """
    w = np.asarray(dx, dtype=float) + 1j * (np.abs(np.asarray(y, dtype=float)) + 0.0)
    g = potential_derivative(w, force, a)
    upper = np.asarray(upper, dtype=bool)
    gx = np.where(upper, g.real / mu_plus, -g.real / mu_minus)
    gy = np.where(upper, -g.imag / mu_plus, -g.imag / mu_minus)
    return gx, gy


def grad_u0(
    point: tuple[float, float],
    material: Bimaterial,
    load: LoadCase,
    tip: TipState,
    side: Optional[str] = None,
) -> FieldGradient:
    """Gradient of the unperturbed displacement at a global point.

    ``side`` ("upper"/"lower") is required for points on the interface line
    and ignored elsewhere.
    """
    x, y = point
    if y > 0:
        upper = True
    elif y < 0:
        upper = False
    elif side in ("upper", "lower"):
        upper = side == "upper"
    else:
        raise DomainError("point on the interface line needs side='upper' or 'lower'")
    gx, gy = gradient_arrays(x - tip.x_tip, y, upper, load.force, tip.a,
                             material.mu_plus, material.mu_minus)
    return FieldGradient(float(gx), float(gy))


def displacement(point, material: Bimaterial, load: LoadCase, tip: TipState, side=None) -> float:
    """Scalar u0 at a global point (used as the finite-difference reference)."""
    x, y = point
    upper = y > 0 or (y == 0 and side == "upper")
    w = complex(x - tip.x_tip, abs(y) + 0.0)
    f = complex(potential(w, load.force, tip.a))
    return f.real / material.mu_plus if upper else -f.real / material.mu_minus
