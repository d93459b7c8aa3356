"""CSV renderings of traces, diagrams and per-defect breakdowns.

Floats are written with 17 significant digits so files round-trip exactly.
Summary lines start with ``#`` after the table.
"""

from __future__ import annotations

import csv
import io
from typing import Optional

from .diagram import DiagramGrid, classify
from .model import Configuration, TipState, to_polar
from .perturbation import relative_perturbation
from .propagation import PropagationTrace


def fmt(value: float) -> str:
    return f"{value:.17g}"


def trace_csv(trace: PropagationTrace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "x_tip", "a", "relative", "increment", "cumulative", "capped"])
    cumulative = 0.0
    for s in trace.steps:
        cumulative += s.increment
        w.writerow([s.index, fmt(s.x_tip), fmt(s.a), fmt(s.relative), fmt(s.increment),
                    fmt(cumulative), int(s.capped)])
    buf.write(
        f"# outcome={trace.outcome.value},total_elongation={fmt(trace.total_elongation)},"
        f"final_x_tip={fmt(trace.final_x_tip)},final_relative={fmt(trace.final_relative)},"
        f"final_increment={fmt(trace.final_increment)}\n"
    )
    return buf.getvalue()


def diagram_csv(grid: DiagramGrid) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "x_tip", "alpha", "relative", "class"])
    for i, x in enumerate(grid.x):
        for k, alpha in enumerate(grid.alpha):
            r = float(grid.relative[i, k])
            w.writerow([fmt(x), fmt(grid.x_tip[i]), fmt(alpha), fmt(r),
                        classify(r, grid.neutral_tol).value])
    return buf.getvalue()


def deltak_csv(config: Configuration, tip: Optional[TipState] = None) -> str:
    tip = config.tip if tip is None else tip
    result = relative_perturbation(config, tip)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "kind", "x", "y", "half_length", "angle", "d", "phi", "delta_k", "relative"])
    for i, (defect, dk) in enumerate(zip(config.defects, result.per_defect)):
        polar = to_polar(defect, tip)
        w.writerow([i, defect.kind.value, fmt(defect.x), fmt(defect.y), fmt(defect.half_length),
                    fmt(defect.angle), fmt(polar.d), fmt(polar.phi), fmt(dk), fmt(dk / result.k0)])
    buf.write(
        f"# x_tip={fmt(tip.x_tip)},a={fmt(tip.a)},k0={fmt(result.k0)},"
        f"total={fmt(result.total)},relative={fmt(result.relative)}\n"
    )
    return buf.getvalue()
