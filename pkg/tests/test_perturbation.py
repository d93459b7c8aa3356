import math

import numpy as np
import pytest
from conftest import random_config, random_defect

from crackchannel import asymptotics as asy
from crackchannel.field import a0, k0
from crackchannel.model import (
    Bimaterial,
    Configuration,
    Defect,
    DefectKind,
    DefectPolar,
    DomainError,
    LoadCase,
    TipState,
)
from crackchannel.perturbation import (
    DefectTable,
    delta_k_advance,
    delta_k_arrays,
    delta_k_defect,
    relative_perturbation,
    weight_vector,
)
from crackchannel.presets import microcrack_channel
from crackchannel.config import expand_arrays
from crackchannel.propagation import step_advance

MC, RI = DefectKind.MICROCRACK, DefectKind.RIGID_LINE_INCLUSION


def far_case(kind, d, phi, alpha, s=0.1, mat=None, ratio=1e6):
    mat = mat or Bimaterial(1.0, 1.0)
    load = LoadCase(1.0, -ratio * d)
    tip = TipState.at(0.0, load)
    defect = Defect(kind, d * math.cos(phi), d * math.sin(phi), s, alpha)
    return delta_k_defect(defect, tip, mat, load) / k0(1.0, tip.a)


@pytest.mark.parametrize(
    "d, phi, expected",
    [(1.0, 0.0, (0.0, 0.5)), (1.0, math.pi, (0.5, 0.0)), (4.0, math.pi / 2, (-math.sqrt(2) / 32, -math.sqrt(2) / 32))],
)
def test_weight_vector_examples(d, phi, expected):
    c = weight_vector(DefectPolar(d, phi)).as_array()
    assert np.allclose(c, expected, rtol=1e-14, atol=1e-16)
    assert np.linalg.norm(c) == pytest.approx(0.5 * d**-1.5, rel=1e-15)


def test_weight_vector_domain():
    with pytest.raises(DomainError):
        weight_vector(DefectPolar(0.0, 1.0))


def test_far_load_microcrack_example():
    assert far_case(MC, 2.0, math.pi / 2, math.pi / 2) == pytest.approx(3.125e-4, rel=1e-3)


def test_degenerate_dipole_far_load():
    phi = 1.1
    value = far_case(MC, 1.5, phi, phi / 2 + math.pi / 2)
    assert abs(value) < 1e-9


@pytest.mark.parametrize("alpha", [0.0, 0.4, 2.5])
def test_microcrack_ahead_amplifies(alpha):
    # phi -> 0+ from above; the opposite half-plane modulus carries the weight
    mat, s, phi = Bimaterial(1.0, 3.0), 1e-4, 1e-3
    value = far_case(MC, 1.0, phi, alpha, s=s, mat=mat)
    expected = s * s / 4 * math.cos(alpha) ** 2 * 2 * 3.0 / 4.0
    assert value > 0
    assert value == pytest.approx(asy.far_single_microcrack(1.0, phi, alpha, s, 1.0, 3.0), rel=1e-3)
    assert value == pytest.approx(expected, rel=5e-3)


def test_far_load_oracle_random(rng):
    for _ in range(50):
        kind = MC if rng.random() < 0.5 else RI
        mat = Bimaterial(rng.uniform(0.2, 5), rng.uniform(0.2, 5))
        d = rng.uniform(0.5, 3)
        phi = rng.uniform(0.1, math.pi - 0.1) * rng.choice([-1, 1])
        alpha = rng.uniform(0, math.pi)
        full = far_case(kind, d, phi, alpha, mat=mat)
        far = asy.far_single(kind, d, phi, alpha, 0.1, mat.mu_plus, mat.mu_minus)
        assert abs(full - far) < 1e-4 * 0.5 * (0.1 / d) ** 2


@pytest.mark.parametrize("phi_step, a0_, expected", [(0.0, -3.0, 0.0), (2.0, -1.0, -1.0)])
def test_delta_k_advance(phi_step, a0_, expected):
    assert delta_k_advance(phi_step, a0_) == expected


def test_advance_cancels_defects(rng):
    for _ in range(10):
        cfg = random_config(rng)
        delta = step_advance(cfg)
        total = relative_perturbation(cfg).total
        residual = delta_k_advance(delta, a0(cfg.load.force, cfg.tip.a)) + total
        assert abs(residual) <= 1e-12 * abs(total)


def test_empty_configuration():
    load = LoadCase(1.0, 0.0)
    res = relative_perturbation(Configuration(Bimaterial(1, 1), load, TipState.at(1.0, load), []))
    assert res.total == 0.0 and res.relative == 0.0 and res.per_defect == ()


def test_duplicates_scale_linearly(rng):
    cfg = random_config(rng, n=1)
    single = relative_perturbation(cfg).total
    for k in (2, 5):
        dup = cfg.with_defects(cfg.defects * k)
        assert relative_perturbation(dup).total == pytest.approx(k * single, rel=1e-14)


def test_total_is_ordered_sum(rng):
    res = relative_perturbation(random_config(rng, n=9))
    acc = 0.0
    for v in res.per_defect:
        acc += v
    assert res.total == acc
    assert res.relative == res.total / res.k0


def test_superposition_over_concatenation(rng):
    a, b = random_config(rng), random_config(rng)
    b = a.with_defects(b.defects)
    joined = a.with_defects(a.defects + b.defects)
    ra, rb, rj = (relative_perturbation(c) for c in (a, b, joined))
    assert rj.per_defect == ra.per_defect + rb.per_defect
    assert rj.total == pytest.approx(ra.total + rb.total, rel=1e-12)


def test_vectorised_kernel_matches_scalar_path(rng):
    for _ in range(5):
        cfg = random_config(rng)
        fast = delta_k_arrays(DefectTable(cfg.defects), cfg.tip.x_tip, cfg.tip.a, cfg.load.force, cfg.material)
        slow = [delta_k_defect(d, cfg.tip, cfg.material, cfg.load) for d in cfg.defects]
        assert np.allclose(fast, slow, rtol=1e-12, atol=0)


def test_load_sign_invariance(rng):
    for _ in range(10):
        cfg = random_config(rng)
        flipped = Configuration(cfg.material, LoadCase(-cfg.load.force, cfg.load.load_x), cfg.tip, cfg.defects)
        a, b = relative_perturbation(cfg), relative_perturbation(flipped)
        assert np.allclose(np.array(b.per_defect) / b.k0, np.array(a.per_defect) / a.k0, rtol=1e-12, atol=0)


def test_stiffness_scale_invariance(rng):
    for _ in range(10):
        cfg = random_config(rng)
        kappa = rng.uniform(0.01, 100)
        scaled = Configuration(Bimaterial(kappa * cfg.material.mu_plus, kappa * cfg.material.mu_minus),
                               cfg.load, cfg.tip, cfg.defects)
        assert np.allclose(relative_perturbation(scaled).per_defect, relative_perturbation(cfg).per_defect,
                           rtol=1e-12, atol=0)


def test_mirror_swap_invariance(rng):
    for _ in range(10):
        cfg = random_config(rng)
        mirrored = Configuration(
            cfg.material.swapped(), cfg.load, cfg.tip,
            [Defect(d.kind, d.x, -d.y, d.half_length, -d.angle) for d in cfg.defects],
        )
        assert np.allclose(relative_perturbation(mirrored).per_defect, relative_perturbation(cfg).per_defect,
                           rtol=1e-12, atol=0)


def test_microcrack_channel_initial_tip_amplifies():
    cfg = expand_arrays(microcrack_channel(3 * math.pi / 4, a=0.5))
    assert relative_perturbation(cfg).relative > 0


def test_defect_at_tip_reports_index():
    load = LoadCase(1.0, 0.0)
    tip = TipState.at(1.0, load)
    table = DefectTable([random_defect(np.random.default_rng(1)), Defect(MC, 1.0, 0.5, 0.1, 0.0)])
    object.__setattr__(table, "y", np.array([table.y[0], 0.0]))
    with pytest.raises(DomainError, match="defect 1"):
        delta_k_arrays(table, 1.0, 1.0, 1.0, Bimaterial(1, 1))
