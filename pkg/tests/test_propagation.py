import math
from dataclasses import replace

import numpy as np
import pytest

from crackchannel.config import expand_arrays
from crackchannel.field import a0
from crackchannel.model import Bimaterial, Configuration, Defect, DefectKind, LoadCase, SolverSettings, TipState
from crackchannel.perturbation import delta_k_advance, relative_perturbation
from crackchannel.presets import microcrack_channel, mixed_channel
from crackchannel.propagation import Outcome, PropagationError, propagate, speed_scaling_probe, step_advance

MC = DefectKind.MICROCRACK


@pytest.fixture(scope="module")
def near_trace():
    return propagate(expand_arrays(microcrack_channel(math.pi / 4, a=0.5)))


def test_empty_configuration_arrests_immediately():
    load = LoadCase(1.0, 0.0)
    cfg = Configuration(Bimaterial(1, 1), load, TipState.at(0.5, load), [])
    assert step_advance(cfg) == 0.0
    trace = propagate(cfg)
    assert trace.outcome is Outcome.IMMEDIATE_ARREST
    assert trace.total_elongation == 0.0 and trace.steps == ()


def test_amplifying_defect_gives_positive_advance():
    load = LoadCase(1.0, 0.0)
    # microcrack just ahead with a shallow inclination amplifies
    cfg = Configuration(Bimaterial(1, 1), load, TipState.at(1.0, load), [Defect(MC, 2.0, 0.5, 0.1, 0.0)])
    assert relative_perturbation(cfg).total > 0
    assert step_advance(cfg) > 0


def test_advance_is_root_of_bracket():
    cfg = expand_arrays(microcrack_channel(3 * math.pi / 4, a=0.5))
    delta = step_advance(cfg)
    total = relative_perturbation(cfg).total
    assert abs(delta_k_advance(delta, a0(1.0, cfg.tip.a)) + total) <= 1e-12 * abs(total)


def test_trace_is_monotone(near_trace):
    assert near_trace.outcome is Outcome.ARRESTED
    x = np.array([s.x_tip for s in near_trace.steps])
    a = np.array([s.a for s in near_trace.steps])
    assert np.all(np.diff(x) > 0) and np.all(np.diff(a) > 0)
    assert all(s.increment > 0 for s in near_trace.steps)


def test_elongation_matches_tip_travel(near_trace):
    t = near_trace
    assert t.total_elongation == pytest.approx(t.final_x_tip - t.initial_x_tip, rel=1e-12)
    assert t.final_a == pytest.approx(t.final_x_tip - (0.5 - 0.5), rel=1e-12)


def test_arrest_consistency(near_trace):
    cfg = expand_arrays(microcrack_channel(math.pi / 4, a=0.5))
    tip = TipState(near_trace.final_x_tip, near_trace.final_a)
    delta = step_advance(cfg, tip)
    assert delta <= cfg.settings.arrest_tol or tip.x_tip + delta == tip.x_tip


def test_determinism():
    cfg = expand_arrays(mixed_channel(math.pi / 2, a=0.5))
    assert propagate(cfg) == propagate(cfg)


def test_increment_cap_is_recorded():
    cfg = expand_arrays(microcrack_channel(math.pi / 4, a=100.0))
    trace = propagate(cfg)
    cap = cfg.max_increment()
    assert cap == pytest.approx(0.12)
    assert all(s.increment <= cap for s in trace.steps)
    assert any(s.capped for s in trace.steps)
    assert all(s.capped == (s.raw_increment > cap) for s in trace.steps)


def test_max_steps_outcome():
    cfg = expand_arrays(microcrack_channel(math.pi / 4, a=0.5))
    cfg = replace(cfg, settings=SolverSettings(max_steps=5))
    trace = propagate(cfg)
    assert trace.outcome is Outcome.MAX_STEPS_REACHED and len(trace.steps) == 5


def test_positive_arrest_tol_stops_earlier(near_trace):
    cfg = expand_arrays(microcrack_channel(math.pi / 4, a=0.5))
    loose = propagate(replace(cfg, settings=SolverSettings(arrest_tol=1e-6)))
    assert loose.outcome is Outcome.ARRESTED
    assert loose.final_x_tip <= near_trace.final_x_tip
    assert loose.final_increment <= 1e-6


def test_overlap_aborts_with_step_index():
    load = LoadCase(1.0, 0.0)
    # a microcrack sitting just above the crack line in front of the tip keeps amplifying
    defect = Defect(MC, 1.5, 0.15, 0.1, 0.0)
    cfg = Configuration(Bimaterial(1, 1), load, TipState.at(1.0, load), [defect],
                        SolverSettings(max_increment=0.05))
    with pytest.raises(PropagationError) as info:
        propagate(cfg)
    assert info.value.step >= 1


def test_speed_scaling_linear_far():
    cfg = expand_arrays(mixed_channel(math.pi / 2, a=0.5))
    small, big = speed_scaling_probe(cfg, [1.2e4, 4.8e4])
    assert big / small == pytest.approx(4.0, rel=1e-2)


def test_force_sign_does_not_change_advance():
    cfg = expand_arrays(microcrack_channel(3 * math.pi / 4, a=3.0))
    flipped = replace(cfg, load=LoadCase(-1.0, cfg.load.load_x))
    assert step_advance(flipped) == pytest.approx(step_advance(cfg), rel=1e-14)


def test_centre_antisymmetry_far_load():
    a, h, s = 1e6, 1.2, 0.1
    cfg = expand_arrays(microcrack_channel(math.pi / 2, a=a))
    centre = TipState.at(5.0, cfg.load)
    assert abs(step_advance(cfg, centre)) <= 1e-6 * a * s * s / (2 * h * h)
