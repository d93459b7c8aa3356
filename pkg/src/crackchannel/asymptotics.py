"""Closed-form far-load (a -> infinity) results.

Single-defect relative perturbations, channel sums for two standard
arrangements in identical materials, and the infinite-channel closed form.
These double as independent oracles for the full-field evaluation.

Channel geometry: defect columns sit at horizontal offsets ``j*w`` from the
tip, ``j = 1..n_ahead`` ahead and ``j = 1..n_behind`` behind, plus the
``j = 0`` column directly above/below the tip; rows are at ``y = +-h``.
With ``t_j = h^2 / (j w)^2``:

* microcrack rows (upper at alpha, lower at alpha - pi/2)::

      delta ~ a s^2/(2 h^2) * (sum_ahead T_j - sum_behind T_j)
      T_j = t/(1+t)^2 * (sqrt(1+t) + 2 sqrt(t) sin 2alpha)

* rigid inclusions above, microcracks below, same alpha::

      delta ~ a s^2 cos 2alpha/(2 h^2) * (-1 + sum_ahead S_j + sum_behind S_j)
      S_j = (1-t) t/(1+t)^2
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.special import binom, zeta

from .model import Bimaterial, DefectKind, DomainError

Count = Union[int, float]  # float only for math.inf


def _side_weight(phi: float, mu_plus: float, mu_minus: float, side: Optional[str]) -> float:
    if side is None:
        if phi > 0:
            side = "upper"
        elif phi < 0:
            side = "lower"
        else:
            raise DomainError("phi = 0 lies on the interface; pass side explicitly")
    if side == "upper":
        return mu_minus / (mu_plus + mu_minus)
    if side == "lower":
        return mu_plus / (mu_plus + mu_minus)
    raise DomainError(f"side must be 'upper' or 'lower', got {side!r}")


def far_single_microcrack(d, phi, alpha, half_length, mu_plus=1.0, mu_minus=1.0, side=None) -> float:
    """Far-load dK/K0 of one microcrack at tip-relative polar position (d, phi)."""
    if not d > 0:
        raise DomainError(f"distance must be positive, got d={d!r}")
    w = _side_weight(phi, mu_plus, mu_minus, side)
    return (0.5 * (half_length / d) ** 2 * w
            * math.cos(1.5 * phi - alpha) * math.cos(0.5 * phi - alpha))


def far_single_rigid(d, phi, alpha, half_length, mu_plus=1.0, mu_minus=1.0, side=None) -> float:
    """Far-load dK/K0 of one movable rigid line inclusion."""
    if not d > 0:
        raise DomainError(f"distance must be positive, got d={d!r}")
    w = _side_weight(phi, mu_plus, mu_minus, side)
    return (-0.5 * (half_length / d) ** 2 * w
            * math.sin(1.5 * phi - alpha) * math.sin(0.5 * phi - alpha))


def far_single(kind: DefectKind, d, phi, alpha, half_length, mu_plus=1.0, mu_minus=1.0, side=None) -> float:
    if DefectKind.parse(kind) is DefectKind.MICROCRACK:
        return far_single_microcrack(d, phi, alpha, half_length, mu_plus, mu_minus, side)
    return far_single_rigid(d, phi, alpha, half_length, mu_plus, mu_minus, side)


# -- series ------------------------------------------------------------------


def microcrack_summand(t, alpha):
    t = np.asarray(t, dtype=float)
    return t / (1.0 + t) ** 2 * (np.sqrt(1.0 + t) + 2.0 * np.sqrt(t) * math.sin(2.0 * alpha))


def mixed_summand(t):
    t = np.asarray(t, dtype=float)
    return (1.0 - t) * t / (1.0 + t) ** 2


def _t(ratio: float, j: np.ndarray) -> np.ndarray:
    return (ratio / j) ** 2


def _tail(coefficients, first: int, tol: float) -> float:
    """sum_{j >= first} sum_m c_m j^-m, by Hurwitz zeta term by term.

    ``coefficients`` yields ``(m, c_m)`` with geometrically decaying terms.
    """
    total = 0.0
    small = 0
    for m, c in coefficients:
        if c == 0.0:
            continue
        term = c * zeta(m, first)
        total += term
        small = small + 1 if abs(term) < tol else 0
        if small >= 2:
            break
    else:
        raise ArithmeticError("tail expansion did not converge")
    return total


def _direct_limit(ratio: float, n: Count, floor: int = 64) -> int:
    """Number of leading terms summed directly before the tail expansion."""
    return int(min(n, max(floor, math.ceil(2.0 * ratio) + 1)))


def mixed_series(ratio: float, n: Count, tol: float = 1e-15) -> float:
    """sum_{j=1}^{n} S_j for ``ratio = h/w``; ``n`` may be ``math.inf``."""
    if n < 0:
        raise DomainError("number of columns must be non-negative")
    if n == 0:
        return 0.0
    if math.isinf(n):
        J = _direct_limit(ratio, n)
        head = float(np.sum(mixed_summand(_t(ratio, np.arange(1, J + 1, dtype=float)))))
        # S = sum_k (-1)^(k-1) (2k-1) t^k,  t = ratio^2 j^-2
        coeffs = (((2 * k), (-1) ** (k - 1) * (2 * k - 1) * ratio ** (2 * k)) for k in range(1, 400))
        return head + _tail(coeffs, J + 1, tol)
    j = np.arange(1, int(n) + 1, dtype=float)
    return float(np.sum(mixed_summand(_t(ratio, j))))


def microcrack_series(ratio: float, n: Count, alpha: float, tol: float = 1e-15) -> float:
    """sum_{j=1}^{n} T_j(alpha) for ``ratio = h/w``; ``n`` may be ``math.inf``."""
    if n < 0:
        raise DomainError("number of columns must be non-negative")
    if n == 0:
        return 0.0
    if math.isinf(n):
        J = _direct_limit(ratio, n)
        head = float(np.sum(microcrack_summand(_t(ratio, np.arange(1, J + 1, dtype=float)), alpha)))
        s2a = math.sin(2.0 * alpha)

        def coeffs():
            # t (1+t)^(-3/2) + 2 sin2a t^(3/2) (1+t)^(-2)
            for k in range(400):
                yield 2 * k + 2, binom(-1.5, k) * ratio ** (2 * k + 2)
                yield 2 * k + 3, 2.0 * s2a * (-1) ** k * (k + 1) * ratio ** (2 * k + 3)

        return head + _tail(coeffs(), J + 1, tol)
    j = np.arange(1, int(n) + 1, dtype=float)
    return float(np.sum(microcrack_summand(_t(ratio, j), alpha)))


def sinh_term(x: float) -> float:
    """x^2 / (2 sinh^2 x), stable for small and large x."""
    x = abs(float(x))
    if x == 0.0:
        return 0.5
    if x < 20.0:
        return 0.5 * (x / math.sinh(x)) ** 2
    # log sinh x = x + log1p(-exp(-2x)) - log 2
    log_sinh = x + math.log1p(-math.exp(-2.0 * x)) - math.log(2.0)
    return 0.5 * math.exp(2.0 * (math.log(x) - log_sinh))


def mixed_series_infinite(ratio: float) -> float:
    """Closed form of sum_{j>=1} S_j: 1/2 - (pi r)^2 / (2 sinh^2(pi r))."""
    if not ratio > 0:
        raise DomainError("h/w must be positive")
    return 0.5 - sinh_term(math.pi * ratio)


# -- channels ----------------------------------------------------------------


class Arrangement(enum.Enum):
    MICROCRACK_PERPENDICULAR_ROWS = "microcrack-rows"
    RIGID_ABOVE_MICROCRACK_BELOW = "rigid-above-microcrack-below"


@dataclass(frozen=True)
class ChannelSpec:
    n_ahead: Count
    n_behind: Count
    h: float
    w: float
    s: float
    alpha: float
    arrangement: Arrangement

    def __post_init__(self):
        for name in ("n_ahead", "n_behind"):
            n = getattr(self, name)
            if not (n == math.inf or (float(n).is_integer() and n >= 0)):
                raise DomainError(f"{name} must be a non-negative integer or inf, got {n!r}")
        if not (self.h > 0 and self.w > 0 and self.s > 0):
            raise DomainError("h, w and s must be positive")

    @property
    def ratio(self) -> float:
        return self.h / self.w

    @property
    def prefactor(self) -> float:
        """a-free prefactor s^2 / (2 h^2)."""
        return self.s**2 / (2.0 * self.h**2)


def _require_identical(material: Optional[Bimaterial]):
    if material is not None and not material.identical:
        raise DomainError("channel formulas hold only for identical materials")


def microcrack_bracket(spec: ChannelSpec) -> float:
    return (microcrack_series(spec.ratio, spec.n_ahead, spec.alpha)
            - microcrack_series(spec.ratio, spec.n_behind, spec.alpha))


def channel_microcracks(spec: ChannelSpec, a: float, material: Optional[Bimaterial] = None) -> float:
    """Leading-order advance for perpendicular microcrack rows."""
    if spec.arrangement is not Arrangement.MICROCRACK_PERPENDICULAR_ROWS:
        raise DomainError("channel_microcracks needs the perpendicular microcrack-row arrangement")
    _require_identical(material)
    return a * spec.prefactor * microcrack_bracket(spec)


def mixed_bracket(spec: ChannelSpec) -> float:
    ahead = (mixed_series_infinite(spec.ratio) if math.isinf(spec.n_ahead)
             else mixed_series(spec.ratio, spec.n_ahead))
    behind = (mixed_series_infinite(spec.ratio) if math.isinf(spec.n_behind)
              else mixed_series(spec.ratio, spec.n_behind))
    return -1.0 + (ahead + behind)  # grouped so swapping the sides is exact


def channel_mixed(spec: ChannelSpec, a: float, material: Optional[Bimaterial] = None) -> float:
    """Leading-order advance for rigid inclusions above and microcracks below."""
    if spec.arrangement is not Arrangement.RIGID_ABOVE_MICROCRACK_BELOW:
        raise DomainError("channel_mixed needs the rigid-above/microcrack-below arrangement")
    _require_identical(material)
    return a * spec.prefactor * math.cos(2.0 * spec.alpha) * mixed_bracket(spec)


def mixed_infinite_bracket(n_behind: Count, h: float, w: float) -> float:
    """-1/2 - (pi h/w)^2 / (2 sinh^2(pi h/w)) + sum_{j=1}^{n_behind} S_j."""
    if not (h > 0 and w > 0):
        raise DomainError("h and w must be positive")
    return -0.5 - sinh_term(math.pi * h / w) + mixed_series(h / w, n_behind)


def channel_mixed_infinite(n_behind: Count, h: float, w: float, alpha: float, s: float, a: float) -> float:
    """Leading-order advance with infinitely many mixed columns ahead of the tip."""
    return (a * s**2 * math.cos(2.0 * alpha) / (2.0 * h**2)
            * mixed_infinite_bracket(n_behind, h, w))
