"""Run configurations: JSON documents with array generators.

A run document looks like::

    {
      "material": {"mu_plus": 1.0, "mu_minus": 1.0},
      "load": {"force": 1.0, "x": 0.0},
      "tip": {"x": 0.5},
      "alpha": "135deg",
      "arrays": [
        {"kind": "microcrack", "side": "upper", "count": 9, "x_start": 1.0,
         "spacing": 1.0, "standoff": 1.2, "half_length": 0.1, "angle_offset": 0.0},
        {"kind": "microcrack", "side": "lower", "count": 9, "x_start": 1.0,
         "spacing": 1.0, "standoff": 1.2, "half_length": 0.1, "angle_offset": "-90deg"}
      ],
      "defects": [],
      "solver": {"max_steps": 1000000, "arrest_tol": 0.0},
      "diagram": {"n_alpha": 181}
    }

Angles are radians, or strings with a ``deg`` suffix. Array defects take the
angle ``alpha + angle_offset`` unless the generator fixes ``angle``; explicit
``defects`` keep their own angle and are never rotated by diagram scans.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping, Optional

import numpy as np

from .model import (
    Bimaterial,
    Configuration,
    ConfigurationError,
    Defect,
    DefectKind,
    Issue,
    LoadCase,
    SolverSettings,
    TipState,
    validate,
)

_DEG = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*deg\s*$")


def parse_angle(value: Any, where: str = "angle") -> float:
    if isinstance(value, bool):
        raise ConfigurationError(Issue("bad angle", f"{where}: {value!r}"))
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        m = _DEG.match(value)
        if m:
            return math.radians(float(m.group(1)))
        try:
            return float(value)
        except ValueError:
            pass
    raise ConfigurationError(Issue("bad angle", f"{where}: {value!r} (radians or '<number>deg')"))


@dataclass(frozen=True)
class ArrayGenerator:
    """A row of ``count`` identical defects at ``y = +-standoff``."""

    kind: DefectKind
    side: str
    count: int
    x_start: float
    spacing: float
    standoff: float
    half_length: float
    angle_offset: float = 0.0
    angle: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", DefectKind.parse(self.kind))
        issues = []
        if self.side not in ("upper", "lower"):
            issues.append(Issue("bad side", f"side={self.side!r} (upper|lower)"))
        if self.count < 0 or int(self.count) != self.count:
            issues.append(Issue("bad count", f"count={self.count!r}"))
        if self.count > 1 and not self.spacing > 0:
            issues.append(Issue("bad spacing", f"spacing={self.spacing!r}"))
        if not self.standoff > 0:
            issues.append(Issue("bad standoff", f"standoff={self.standoff!r}"))
        if issues:
            raise ConfigurationError(issues)

    @property
    def y(self) -> float:
        return self.standoff if self.side == "upper" else -self.standoff

    @property
    def rotates(self) -> bool:
        return self.angle is None

    def positions(self) -> list[float]:
        return [self.x_start + k * self.spacing for k in range(int(self.count))]


@dataclass(frozen=True)
class DiagramSettings:
    """Diagram scan over tip positions (global x) and inclinations in (0, pi)."""

    x_min: Optional[float] = None
    x_max: Optional[float] = None
    x_step: Optional[float] = None
    n_alpha: int = 181
    neutral_tol: float = 1e-12


@dataclass(frozen=True)
class RunConfig:
    material: Bimaterial
    load: LoadCase
    tip_x: float
    alpha: float = 0.0
    arrays: tuple[ArrayGenerator, ...] = ()
    defects: tuple[Defect, ...] = ()
    solver: SolverSettings = field(default_factory=SolverSettings)
    diagram: DiagramSettings = field(default_factory=DiagramSettings)

    def __post_init__(self):
        object.__setattr__(self, "arrays", tuple(self.arrays))
        object.__setattr__(self, "defects", tuple(self.defects))
        object.__setattr__(self, "alpha", parse_angle(self.alpha, "alpha"))

    def with_alpha(self, alpha: float | str) -> "RunConfig":
        return replace(self, alpha=alpha)

    def with_load_distance(self, a: float) -> "RunConfig":
        """Same geometry and tip, load moved to ``tip_x - a``."""
        return replace(self, load=LoadCase(self.load.force, self.tip_x - a))

    def spacing(self) -> float:
        spacings = [g.spacing for g in self.arrays if g.count > 1]
        return min(spacings) if spacings else 1.0


@dataclass(frozen=True)
class ExpandedDefect:
    defect: Defect
    rotates: bool
    offset: float


def expand_defects(run: RunConfig, alpha: Optional[float] = None) -> list[ExpandedDefect]:
    """Generated defects column-major left to right, upper before lower; explicit defects last."""
    alpha = run.alpha if alpha is None else alpha
    entries = []
    issues: list[Issue] = []
    for g_index, gen in enumerate(run.arrays):
        for k, x in enumerate(gen.positions()):
            angle = alpha + gen.angle_offset if gen.rotates else gen.angle
            try:
                defect = Defect(gen.kind, x, gen.y, gen.half_length, angle)
            except ConfigurationError as exc:
                issues.extend(
                    Issue(i.rule, f"arrays[{g_index}] element {k} at ({x!r}, {gen.y!r}): {i.message}")
                    for i in exc.issues
                )
                continue
            key = (x, 0 if gen.y > 0 else 1, g_index, k)
            entries.append((key, ExpandedDefect(defect, gen.rotates, gen.angle_offset)))
    if issues:
        raise ConfigurationError(issues)
    entries.sort(key=lambda e: e[0])
    out = [e for _, e in entries]
    out.extend(ExpandedDefect(d, False, 0.0) for d in run.defects)
    return out


def expand_arrays(run: RunConfig, alpha: Optional[float] = None, check: bool = True) -> Configuration:
    """Build the validated :class:`Configuration` of a run at inclination ``alpha``."""
    defects = [e.defect for e in expand_defects(run, alpha)]
    config = Configuration(run.material, run.load, TipState.at(run.tip_x, run.load), defects, run.solver)
    return validate(config) if check else config


# -- (de)serialisation ---------------------------------------------------------


class _Reader:
    """Collects field errors with their JSON paths instead of failing on the first."""

    def __init__(self):
        self.issues: list[Issue] = []

    def get(self, data: Mapping, key: str, path: str, kind=float, default=..., allow_none=False):
        if not isinstance(data, Mapping):
            self.issues.append(Issue("malformed config", f"{path}: expected an object"))
            return None
        if key not in data:
            if default is ...:
                self.issues.append(Issue("missing field", f"{path}.{key}"))
                return None
            return default
        value = data[key]
        if value is None and allow_none:
            return None
        try:
            if kind is float:
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise TypeError
                return float(value)
            if kind is int:
                if isinstance(value, bool) or not float(value).is_integer():
                    raise TypeError
                return int(value)
            if kind == "angle":
                return parse_angle(value, f"{path}.{key}")
            if kind is str:
                if not isinstance(value, str):
                    raise TypeError
                return value
        except (TypeError, ValueError):
            self.issues.append(Issue("bad value", f"{path}.{key}: {value!r}"))
            return None
        except ConfigurationError as exc:
            self.issues.extend(exc.issues)
            return None
        raise AssertionError(kind)

    def build(self, factory, path: str, *args, **kwargs):
        if any(a is None for a in args) or any(v is None and k not in _NULLABLE for k, v in kwargs.items()):
            return None
        try:
            return factory(*args, **kwargs)
        except ConfigurationError as exc:
            self.issues.extend(Issue(i.rule, f"{path}: {i.message}", i.index) for i in exc.issues)
            return None


_NULLABLE = {"max_increment", "angle", "x_min", "x_max", "x_step"}

_TOP_KEYS = {"material", "load", "tip", "alpha", "arrays", "defects", "solver", "diagram"}


def run_config_from_dict(data: Mapping[str, Any]) -> RunConfig:
    r = _Reader()
    if not isinstance(data, Mapping):
        raise ConfigurationError(Issue("malformed config", "top level must be an object"))
    for key in data:
        if key not in _TOP_KEYS:
            r.issues.append(Issue("unknown field", key))

    mat = data.get("material", {})
    material = r.build(Bimaterial, "material",
                       r.get(mat, "mu_plus", "material"), r.get(mat, "mu_minus", "material"))
    ld = data.get("load", {})
    load = r.build(LoadCase, "load", r.get(ld, "force", "load", default=1.0), r.get(ld, "x", "load"))
    tip_x = r.get(data.get("tip", {}), "x", "tip")
    alpha = r.get(data, "alpha", "", kind="angle", default=0.0)

    arrays = []
    for i, g in enumerate(data.get("arrays", []) or []):
        p = f"arrays[{i}]"
        kind = r.get(g, "kind", p, kind=str)
        try:
            kind = DefectKind.parse(kind) if kind is not None else None
        except ConfigurationError as exc:
            r.issues.extend(Issue(x.rule, f"{p}.kind: {x.message}") for x in exc.issues)
            kind = None
        arrays.append(r.build(
            ArrayGenerator, p,
            kind,
            r.get(g, "side", p, kind=str),
            r.get(g, "count", p, kind=int),
            r.get(g, "x_start", p),
            r.get(g, "spacing", p, default=1.0),
            r.get(g, "standoff", p),
            r.get(g, "half_length", p),
            r.get(g, "angle_offset", p, kind="angle", default=0.0),
            angle=r.get(g, "angle", p, kind="angle", default=None, allow_none=True),
        ))

    defects = []
    for i, d in enumerate(data.get("defects", []) or []):
        p = f"defects[{i}]"
        kind = r.get(d, "kind", p, kind=str)
        try:
            kind = DefectKind.parse(kind) if kind is not None else None
        except ConfigurationError as exc:
            r.issues.extend(Issue(x.rule, f"{p}.kind: {x.message}") for x in exc.issues)
            kind = None
        args = (kind, r.get(d, "x", p), r.get(d, "y", p), r.get(d, "half_length", p),
                r.get(d, "angle", p, kind="angle"))
        if all(a is not None for a in args):
            try:
                defects.append(Defect(*args))
            except ConfigurationError as exc:
                r.issues.extend(Issue(x.rule, f"{p}: {x.message}", i) for x in exc.issues)

    sv = data.get("solver", {}) or {}
    solver = r.build(
        SolverSettings, "solver",
        r.get(sv, "max_steps", "solver", kind=int, default=SolverSettings.max_steps),
        r.get(sv, "arrest_tol", "solver", default=SolverSettings.arrest_tol),
        max_increment=r.get(sv, "max_increment", "solver", default=None, allow_none=True),
        validity_ratio=r.get(sv, "validity_ratio", "solver", default=SolverSettings.validity_ratio),
    )
    dg = data.get("diagram", {}) or {}
    diagram = DiagramSettings(
        r.get(dg, "x_min", "diagram", default=None, allow_none=True),
        r.get(dg, "x_max", "diagram", default=None, allow_none=True),
        r.get(dg, "x_step", "diagram", default=None, allow_none=True),
        r.get(dg, "n_alpha", "diagram", kind=int, default=181),
        r.get(dg, "neutral_tol", "diagram", default=1e-12),
    )
    if diagram.n_alpha is not None and diagram.n_alpha < 1:
        r.issues.append(Issue("bad value", "diagram.n_alpha must be >= 1"))
    if diagram.x_step is not None and not diagram.x_step > 0:
        r.issues.append(Issue("bad value", "diagram.x_step must be positive"))

    if r.issues:
        raise ConfigurationError(r.issues)
    return RunConfig(material, load, tip_x, alpha, tuple(arrays), tuple(defects), solver, diagram)


def run_config_to_dict(run: RunConfig) -> dict:
    return {
        "material": {"mu_plus": run.material.mu_plus, "mu_minus": run.material.mu_minus},
        "load": {"force": run.load.force, "x": run.load.load_x},
        "tip": {"x": run.tip_x},
        "alpha": run.alpha,
        "arrays": [
            {
                "kind": g.kind.value, "side": g.side, "count": g.count, "x_start": g.x_start,
                "spacing": g.spacing, "standoff": g.standoff, "half_length": g.half_length,
                "angle_offset": g.angle_offset, "angle": g.angle,
            }
            for g in run.arrays
        ],
        "defects": [
            {"kind": d.kind.value, "x": d.x, "y": d.y, "half_length": d.half_length, "angle": d.angle}
            for d in run.defects
        ],
        "solver": {
            "max_steps": run.solver.max_steps,
            "arrest_tol": run.solver.arrest_tol,
            "max_increment": run.solver.max_increment,
            "validity_ratio": run.solver.validity_ratio,
        },
        "diagram": {
            "x_min": run.diagram.x_min, "x_max": run.diagram.x_max, "x_step": run.diagram.x_step,
            "n_alpha": run.diagram.n_alpha, "neutral_tol": run.diagram.neutral_tol,
        },
    }


def loads(text: str) -> RunConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(
            Issue("malformed config", f"line {exc.lineno}, column {exc.colno}: {exc.msg}")
        ) from None
    return run_config_from_dict(data)


def dumps(run: RunConfig) -> str:
    return json.dumps(run_config_to_dict(run), indent=2)


def load(path: str | Path) -> RunConfig:
    return loads(Path(path).read_text())


def save(run: RunConfig, path: str | Path) -> None:
    Path(path).write_text(dumps(run) + "\n")


def default_alpha_grid(n: int) -> np.ndarray:
    """``n`` inclinations strictly inside (0, pi), evenly spaced."""
    return math.pi * np.arange(1, n + 1) / (n + 1)
