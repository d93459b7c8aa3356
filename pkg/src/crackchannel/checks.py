"""Self-check suite behind ``crackchannel check``.

Each check is cheap, deterministic and compares two independent routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import asymptotics as asy
from .dipole import dipole_matrix
from .field import displacement, grad_u0, k0, potential_derivative
from .model import Bimaterial, Configuration, Defect, DefectKind, LoadCase, TipState, to_polar
from .perturbation import delta_k_defect, relative_perturbation


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def check_near_tip_limit():
    a, r = 1.0, 1e-12
    val = math.sqrt(2 * math.pi * r) * complex(potential_derivative(r, 1.0, a))
    err = _rel(val.imag, -k0(1.0, a))
    return err < 1e-6, f"rel err {err:.2e}"


def check_gradient_fd():
    rng = np.random.default_rng(7)
    mat, load = Bimaterial(1.3, 0.6), LoadCase(1.0, 0.0)
    tip = TipState.at(1.0, load)
    worst = 0.0
    for _ in range(20):
        x, y = rng.uniform(-0.5, 3.0), rng.choice([-1, 1]) * rng.uniform(0.2, 2.0)
        h = 1e-5
        fx = (displacement((x + h, y), mat, load, tip) - displacement((x - h, y), mat, load, tip)) / (2 * h)
        fy = (displacement((x, y + h), mat, load, tip) - displacement((x, y - h), mat, load, tip)) / (2 * h)
        g = grad_u0((x, y), mat, load, tip)
        worst = max(worst, float(np.hypot(g.gx - fx, g.gy - fy) / np.hypot(g.gx, g.gy)))
    return worst < 1e-7, f"max rel err {worst:.2e}"


def check_traction_continuity():
    mat, load = Bimaterial(2.5, 0.4), LoadCase(1.0, 0.0)
    tip = TipState.at(1.0, load)
    worst = 0.0
    for x in (1.1, 1.5, 3.0, 10.0):
        up = mat.mu_plus * grad_u0((x, 0.0), mat, load, tip, side="upper").gy
        lo = mat.mu_minus * grad_u0((x, 0.0), mat, load, tip, side="lower").gy
        worst = max(worst, _rel(up, lo))
    return worst < 1e-14, f"max rel mismatch {worst:.2e}"


def check_dipole_duality():
    worst = 0.0
    for alpha in np.linspace(0, math.pi, 13):
        r = dipole_matrix(DefectKind.RIGID_LINE_INCLUSION, 0.3, alpha).as_array()
        m = dipole_matrix(DefectKind.MICROCRACK, 0.3, alpha + math.pi / 2).as_array()
        worst = max(worst, float(np.max(np.abs(r + m))) / (math.pi * 0.09))
    return worst < 1e-12, f"max rel err {worst:.2e}"


def check_far_load_oracle():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(50):
        kind = rng.choice([DefectKind.MICROCRACK, DefectKind.RIGID_LINE_INCLUSION])
        mat = Bimaterial(rng.uniform(0.2, 5), rng.uniform(0.2, 5))
        d, phi = rng.uniform(0.5, 3), rng.uniform(0.2, math.pi - 0.2) * rng.choice([-1, 1])
        alpha, s = rng.uniform(0, math.pi), 0.01
        load = LoadCase(1.0, -d * 1e6)
        tip = TipState.at(0.0, load)
        defect = Defect(kind, d * math.cos(phi), d * math.sin(phi), s, alpha)
        full = delta_k_defect(defect, tip, mat, load) / k0(1.0, tip.a)
        far = asy.far_single(kind, d, phi, alpha, s, mat.mu_plus, mat.mu_minus)
        scale = 0.5 * (s / d) ** 2
        worst = max(worst, abs(full - far) / scale)
    return worst < 1e-4, f"max err / (s^2/2d^2) {worst:.2e}"


def check_mixed_series_identity():
    worst = 0.0
    for ratio in (0.3, 1.2, 3.0):
        worst = max(worst, _rel(asy.mixed_series(ratio, math.inf), asy.mixed_series_infinite(ratio)))
    return worst < 1e-12, f"max rel err {worst:.2e}"


def check_microcrack_centre_cancellation():
    spec = asy.ChannelSpec(4, 4, 1.2, 1.0, 0.1, 0.9, asy.Arrangement.MICROCRACK_PERPENDICULAR_ROWS)
    v = asy.channel_microcracks(spec, 1.0)
    return v == 0.0, f"bracket {v!r}"


def _sample_config(rng):
    defects = []
    for _ in range(6):
        kind = rng.choice([DefectKind.MICROCRACK, DefectKind.RIGID_LINE_INCLUSION])
        defects.append(Defect(kind, rng.uniform(-2, 6), rng.choice([-1, 1]) * rng.uniform(0.5, 2),
                              0.1, rng.uniform(0, math.pi)))
    load = LoadCase(rng.uniform(0.5, 2.0), -rng.uniform(0.2, 50))
    return Configuration(Bimaterial(rng.uniform(0.3, 3), rng.uniform(0.3, 3)), load,
                         TipState.at(0.0, load), defects)


def check_mirror_swap():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(10):
        cfg = _sample_config(rng)
        mirrored = replace(
            cfg,
            material=cfg.material.swapped(),
            defects=tuple(Defect(d.kind, d.x, -d.y, d.half_length, -d.angle) for d in cfg.defects),
        )
        a = relative_perturbation(cfg).per_defect
        b = relative_perturbation(mirrored).per_defect
        worst = max(worst, max(_rel(x, y) for x, y in zip(b, a)))
    return worst < 1e-12, f"max rel err {worst:.2e}"


def check_force_sign():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(10):
        cfg = _sample_config(rng)
        flipped = replace(cfg, load=LoadCase(-cfg.load.force, cfg.load.load_x))
        worst = max(worst, _rel(relative_perturbation(flipped).relative, relative_perturbation(cfg).relative))
    return worst < 1e-12, f"max rel err {worst:.2e}"


def check_polar_round_trip():
    tip = TipState(2.0, 1.0)
    d = Defect(DefectKind.MICROCRACK, -1.0, -4.0, 0.1, 0.0)
    p = to_polar(d, tip)
    ok = p.d == 5.0 and abs(tip.x_tip + p.d * math.cos(p.phi) - d.x) < 1e-12
    return ok, f"d={p.d!r}, phi={p.phi!r}"


CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("near-tip SIF limit", check_near_tip_limit),
    ("gradient vs finite differences", check_gradient_fd),
    ("traction continuity", check_traction_continuity),
    ("dipole duality", check_dipole_duality),
    ("far-load oracle", check_far_load_oracle),
    ("infinite mixed series identity", check_mixed_series_identity),
    ("microcrack channel centre cancellation", check_microcrack_centre_cancellation),
    ("mirror-swap invariance", check_mirror_swap),
    ("force-sign invariance", check_force_sign),
    ("polar round trip", check_polar_round_trip),
]


def run_checks() -> list[CheckResult]:
    results = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(ok), detail))
    return results
