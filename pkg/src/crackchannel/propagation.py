"""Quasi-static advance of the main crack through the defect field.

At constant critical SIF the first-order bracket of the expansion must
vanish, which fixes the advance at the current tip:

    delta = -2 * sum_j dK_j / A0

The tip is moved by ``delta`` (capped at ``max_increment``) and the rule is
re-applied until ``delta <= arrest_tol``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Iterable, Optional

import numpy as np

from .field import a0 as a0_coefficient
from .model import CrackChannelError, Configuration, LoadCase, TipState, proximity_issues
from .perturbation import DefectTable, delta_k_arrays, relative_perturbation


class Outcome(enum.Enum):
    ARRESTED = "Arrested"
    MAX_STEPS_REACHED = "MaxStepsReached"
    IMMEDIATE_ARREST = "ImmediateArrest"


class PropagationError(CrackChannelError):
    """Propagation hit an invalid state; ``step`` is the index reached."""

    def __init__(self, message: str, step: int):
        self.step = step
        super().__init__(f"step {step}: {message}")


@dataclass(frozen=True)
class PropagationStep:
    index: int
    x_tip: float
    a: float
    relative: float
    increment: float
    raw_increment: float

    @property
    def capped(self) -> bool:
        return self.increment < self.raw_increment


@dataclass(frozen=True)
class PropagationTrace:
    steps: tuple[PropagationStep, ...]
    outcome: Outcome
    total_elongation: float
    initial_x_tip: float
    final_x_tip: float
    final_relative: float
    final_increment: float

    @property
    def final_a(self) -> float:
        return self.steps[-1].a + self.steps[-1].increment if self.steps else math.nan


def _advance(table: DefectTable, config: Configuration, tip: TipState) -> tuple[float, float]:
    """(delta, relative) at a tip state; sums in input order."""
    if len(table) == 0:
        return 0.0, 0.0
    dk = delta_k_arrays(table, tip.x_tip, tip.a, config.load.force, config.material)
    total = 0.0
    for v in dk.tolist():
        total += v
    a0 = a0_coefficient(config.load.force, tip.a)
    return -2.0 * total / a0, -total / (a0 * tip.a)


def step_advance(config: Configuration, tip: Optional[TipState] = None) -> float:
    """Uncapped physical advance at ``tip`` (defaults to the configured tip)."""
    tip = config.tip if tip is None else tip
    result = relative_perturbation(config, tip)
    return -2.0 * result.total / a0_coefficient(config.load.force, tip.a)


def propagate(config: Configuration) -> PropagationTrace:
    """Iterate the advance rule until arrest or ``max_steps``.

    Arrest is declared when the computed advance is ``<= arrest_tol``, or when
    it is too small to change the tip coordinate in floating point (the
    iteration approaches a neutral point geometrically and may otherwise
    never produce an exactly non-positive advance).
    """
    settings = config.settings
    table = DefectTable(config.defects)
    cap = config.max_increment()
    tip = config.tip
    steps: list[PropagationStep] = []
    total = 0.0
    outcome = Outcome.MAX_STEPS_REACHED

    delta, rel = _advance(table, config, tip)
    while True:
        if delta <= settings.arrest_tol or tip.x_tip + delta == tip.x_tip:
            outcome = Outcome.ARRESTED if steps else Outcome.IMMEDIATE_ARREST
            break
        if len(steps) >= settings.max_steps:
            break
        applied = min(delta, cap)
        steps.append(PropagationStep(len(steps), tip.x_tip, tip.a, rel, applied, delta))
        total += applied
        tip = tip.advanced(applied)
        if len(table) and np.any(
            np.hypot(table.x - tip.x_tip, table.y) <= settings.validity_ratio * table.s
        ):
            errors, _ = proximity_issues(config, tip)
            message = "; ".join(str(e) for e in errors) or "defect overlaps the tip region"
            raise PropagationError(message, len(steps))
        delta, rel = _advance(table, config, tip)

    return PropagationTrace(
        steps=tuple(steps),
        outcome=outcome,
        total_elongation=total,
        initial_x_tip=config.tip.x_tip,
        final_x_tip=tip.x_tip,
        final_relative=rel,
        final_increment=delta,
    )


def speed_scaling_probe(config: Configuration, a_values: Iterable[float]) -> list[float]:
    """Initial advance for each load distance, keeping the tip and defects fixed."""
    out = []
    for a in a_values:
        load = LoadCase(config.load.force, config.tip.x_tip - a)
        moved = replace(config, load=load, tip=TipState.at(config.tip.x_tip, load))
        out.append(step_advance(moved))
    return out
