"""Domain types for an interfacial Mode III crack interacting with line defects.

Frame conventions
-----------------
The interface is the global x-axis. The main crack occupies ``x < x_tip`` on
it; the two symmetric point forces act on the crack faces at the fixed
material point ``load_x``, so the load-tip distance ``a = x_tip - load_x``
grows as the crack advances. Upper half-plane (``y > 0``) has shear modulus
``mu_plus``, lower half-plane ``mu_minus``.

Defects are stored in global coordinates with their physical half-length
``s`` (the product of the small parameter and the nominal half-length), and
converted to tip-relative polar form whenever the tip moves.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence


class CrackChannelError(Exception):
    """Base class for all package errors."""


class DomainError(CrackChannelError, ValueError):
    """An argument lies outside the domain of a formula."""


class SingularityError(DomainError):
    """Evaluation requested at a singular point of the field (tip, load)."""


@dataclass(frozen=True)
class Issue:
    """One violated configuration rule."""

    rule: str
    message: str
    index: Optional[int] = None

    def __str__(self) -> str:
        where = f"defect {self.index}: " if self.index is not None else ""
        return f"{where}{self.rule}: {self.message}"


class ConfigurationError(CrackChannelError, ValueError):
    """Raised with every violated rule of a configuration."""

    def __init__(self, issues: Sequence[Issue] | Issue):
        if isinstance(issues, Issue):
            issues = [issues]
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))

    def with_index(self, index: int) -> "ConfigurationError":
        return ConfigurationError([replace(i, index=index) for i in self.issues])


class ProximityWarning(UserWarning):
    """A defect is close enough to the tip that the small-defect asymptotics degrade."""


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bimaterial:
    mu_plus: float
    mu_minus: float

    def __post_init__(self):
        if not (self.mu_plus > 0 and self.mu_minus > 0):
            raise ConfigurationError(
                Issue(
                    "non-positive modulus",
                    f"mu_plus={self.mu_plus!r}, mu_minus={self.mu_minus!r}",
                )
            )

    @property
    def eta(self) -> float:
        """Contrast parameter (mu_minus - mu_plus) / (mu_minus + mu_plus)."""
        return (self.mu_minus - self.mu_plus) / (self.mu_minus + self.mu_plus)

    @property
    def effective(self) -> float:
        """mu_plus * mu_minus / (mu_plus + mu_minus)."""
        return self.mu_plus * self.mu_minus / (self.mu_plus + self.mu_minus)

    @property
    def identical(self) -> bool:
        return self.mu_plus == self.mu_minus

    @classmethod
    def from_contrast(cls, eta: float, mean: float = 1.0) -> "Bimaterial":
        """Moduli ``mean*(1 - eta)`` above and ``mean*(1 + eta)`` below."""
        if not -1.0 < eta < 1.0:
            raise ConfigurationError(Issue("contrast out of range", f"eta={eta!r}"))
        return cls(mean * (1.0 - eta), mean * (1.0 + eta))

    def swapped(self) -> "Bimaterial":
        return Bimaterial(self.mu_minus, self.mu_plus)


class DefectKind(enum.Enum):
    MICROCRACK = "microcrack"
    RIGID_LINE_INCLUSION = "rigid"

    @classmethod
    def parse(cls, value: "str | DefectKind") -> "DefectKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "_").replace(" ", "_")
        aliases = {
            "microcrack": cls.MICROCRACK,
            "crack": cls.MICROCRACK,
            "rigid": cls.RIGID_LINE_INCLUSION,
            "rigid_line_inclusion": cls.RIGID_LINE_INCLUSION,
            "inclusion": cls.RIGID_LINE_INCLUSION,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ConfigurationError(Issue("unknown defect kind", repr(value))) from None


def reduce_angle(alpha: float) -> float:
    """Reduce an inclination to [0, pi); line defects are invariant under alpha -> alpha + pi."""
    r = math.fmod(alpha, math.pi)
    if r < 0.0:
        r += math.pi
    if r >= math.pi:
        r = 0.0
    return r


@dataclass(frozen=True)
class Defect:
    """A small line defect centred at ``(x, y)`` with half-length ``half_length``.

    The angle is stored reduced modulo pi.
    """

    kind: DefectKind
    x: float
    y: float
    half_length: float
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "kind", DefectKind.parse(self.kind))
        object.__setattr__(self, "angle", reduce_angle(float(self.angle)))
        if not self.half_length > 0:
            raise ConfigurationError(
                Issue("non-positive half-length", f"half_length={self.half_length!r}")
            )
        if self.y == 0.0:
            raise ConfigurationError(
                Issue("defect on interface", f"centre ({self.x!r}, {self.y!r})")
            )
        if abs(self.y) <= self.half_length * abs(math.sin(self.angle)):
            raise ConfigurationError(
                Issue(
                    "defect crosses interface",
                    f"|y|={abs(self.y)!r} <= half_length*|sin(angle)|="
                    f"{self.half_length * abs(math.sin(self.angle))!r}",
                )
            )

    @property
    def upper(self) -> bool:
        return self.y > 0.0

    def rotated_to(self, angle: float) -> "Defect":
        return replace(self, angle=angle)


@dataclass(frozen=True)
class DefectPolar:
    d: float
    phi: float


@dataclass(frozen=True)
class LoadCase:
    force: float
    load_x: float

    def __post_init__(self):
        if self.force == 0.0 or not math.isfinite(self.force):
            raise ConfigurationError(Issue("zero force", f"force={self.force!r}"))


@dataclass(frozen=True)
class TipState:
    x_tip: float
    a: float

    def __post_init__(self):
        if not self.a > 0.0:
            raise ConfigurationError(
                Issue("load ahead of tip", f"load-tip distance a={self.a!r} must be positive")
            )

    @classmethod
    def at(cls, x_tip: float, load: LoadCase) -> "TipState":
        return cls(x_tip, x_tip - load.load_x)

    def advanced(self, delta: float) -> "TipState":
        return TipState(self.x_tip + delta, self.a + delta)


@dataclass(frozen=True)
class SolverSettings:
    """Propagation controls.

    ``max_increment=None`` means one tenth of the smallest defect standoff.
    """

    max_steps: int = 10**6
    arrest_tol: float = 0.0
    max_increment: Optional[float] = None
    validity_ratio: float = 2.0

    def __post_init__(self):
        issues = []
        if self.max_steps < 1:
            issues.append(Issue("invalid solver setting", f"max_steps={self.max_steps!r}"))
        if self.arrest_tol < 0:
            issues.append(Issue("invalid solver setting", f"arrest_tol={self.arrest_tol!r}"))
        if self.max_increment is not None and not self.max_increment > 0:
            issues.append(
                Issue("invalid solver setting", f"max_increment={self.max_increment!r}")
            )
        if not self.validity_ratio > 0:
            issues.append(
                Issue("invalid solver setting", f"validity_ratio={self.validity_ratio!r}")
            )
        if issues:
            raise ConfigurationError(issues)


WARN_RATIO = 10.0


@dataclass(frozen=True)
class Configuration:
    material: Bimaterial
    load: LoadCase
    tip: TipState
    defects: tuple[Defect, ...] = ()
    settings: SolverSettings = field(default_factory=SolverSettings)

    def __post_init__(self):
        object.__setattr__(self, "defects", tuple(self.defects))

    def max_increment(self) -> float:
        if self.settings.max_increment is not None:
            return self.settings.max_increment
        if not self.defects:
            return math.inf
        return min(abs(d.y) for d in self.defects) / 10.0

    def with_tip(self, x_tip: float) -> "Configuration":
        return replace(self, tip=TipState.at(x_tip, self.load))

    def with_defects(self, defects: Sequence[Defect]) -> "Configuration":
        return replace(self, defects=tuple(defects))


def to_polar(defect: Defect, tip: TipState) -> DefectPolar:
    """Tip-relative polar coordinates of a defect centre.

    ``phi`` is measured from the interface ahead of the tip and lies in
    ``(-pi, pi]``; its sign follows the half-plane of the defect.
    """
    dx = defect.x - tip.x_tip
    dy = defect.y
    if dx == 0.0 and dy == 0.0:
        raise SingularityError("defect at tip")
    return DefectPolar(math.hypot(dx, dy), math.atan2(dy, dx))


def proximity_issues(config: Configuration, tip: Optional[TipState] = None) -> tuple[list[Issue], list[Issue]]:
    """Errors (d < validity_ratio*s) and warnings (d < 10 s) at a tip position."""
    tip = config.tip if tip is None else tip
    errors, warns = [], []
    ratio = config.settings.validity_ratio
    for i, defect in enumerate(config.defects):
        d = math.hypot(defect.x - tip.x_tip, defect.y)
        s = defect.half_length
        if d < ratio * s:
            errors.append(
                Issue(
                    "defect too close to tip",
                    f"d={d:.6g} < {ratio:g}*half_length={ratio * s:.6g}",
                    i,
                )
            )
        elif d < WARN_RATIO * s:
            warns.append(
                Issue("defect near tip", f"d={d:.6g} < {WARN_RATIO:g}*half_length", i)
            )
    return errors, warns


def validate(config: Configuration) -> Configuration:
    """Check cross-object rules and return the configuration unchanged.

    Per-object invariants (moduli, interface crossing, ...) are enforced when
    the objects are built. Raises :class:`ConfigurationError` listing every
    violation; proximity below ``10*s`` only triggers a :class:`ProximityWarning`.
    """
    issues: list[Issue] = []
    if config.load.load_x >= config.tip.x_tip:
        issues.append(Issue("load ahead of tip", f"load_x={config.load.load_x!r} >= x_tip={config.tip.x_tip!r}"))
    if not math.isclose(config.tip.a, config.tip.x_tip - config.load.load_x, rel_tol=1e-12, abs_tol=1e-12):
        issues.append(Issue("inconsistent tip state", f"a={config.tip.a!r} != x_tip - load_x"))
    errors, warns = proximity_issues(config)
    issues.extend(errors)
    if issues:
        raise ConfigurationError(issues)
    for w in warns:
        warnings.warn(str(w), ProximityWarning, stacklevel=2)
    return config
