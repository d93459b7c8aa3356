import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crackchannel.dipole import dipole_matrix
from crackchannel.model import DefectKind, DomainError

MC, RI = DefectKind.MICROCRACK, DefectKind.RIGID_LINE_INCLUSION
angles = st.floats(-10.0, 10.0, allow_nan=False)
sizes = st.floats(1e-3, 10.0)
kinds = st.sampled_from([MC, RI])


def rot(t):
    return np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])


def outer_form(kind, s, alpha):
    # independent construction from the unit normal / tangent
    if kind is MC:
        n = np.array([-math.sin(alpha), math.cos(alpha)])
        return -math.pi * s * s * np.outer(n, n)
    t = np.array([math.cos(alpha), math.sin(alpha)])
    return math.pi * s * s * np.outer(t, t)


@pytest.mark.parametrize(
    "kind, alpha, expected",
    [
        (MC, 0.0, [[0, 0], [0, -math.pi]]),
        (RI, math.pi / 2, [[0, 0], [0, math.pi]]),
        (MC, math.pi / 4, [[-math.pi / 2, math.pi / 2], [math.pi / 2, -math.pi / 2]]),
    ],
)
def test_examples(kind, alpha, expected):
    assert np.allclose(dipole_matrix(kind, 1.0, alpha).as_array(), expected, atol=1e-15)


@pytest.mark.parametrize("s", [0.0, -0.1])
def test_nonpositive_size(s):
    with pytest.raises(DomainError):
        dipole_matrix(MC, s, 0.0)


def test_string_kind_accepted():
    assert dipole_matrix("rigid", 1.0, 0.3) == dipole_matrix(RI, 1.0, 0.3)


@given(kinds, sizes, angles)
def test_matches_outer_product(kind, s, alpha):
    m = dipole_matrix(kind, s, alpha)
    assert np.allclose(m.as_array(), outer_form(kind, s, alpha), rtol=0, atol=1e-13 * math.pi * s * s)
    assert m.m21 == m.m12


@given(kinds, sizes, angles)
def test_rank_one_and_trace(kind, s, alpha):
    m = dipole_matrix(kind, s, alpha)
    scale = math.pi * s * s
    assert abs(m.det) <= 1e-12 * scale**2
    assert m.trace == pytest.approx(-scale if kind is MC else scale, rel=1e-13)


@given(kinds, sizes, angles)
def test_definiteness(kind, s, alpha):
    ev = np.linalg.eigvalsh(dipole_matrix(kind, s, alpha).as_array())
    scale = math.pi * s * s
    expected = [-scale, 0.0] if kind is MC else [0.0, scale]
    assert np.allclose(ev, expected, atol=1e-12 * scale)


@given(kinds, sizes, angles, angles)
def test_rotation_equivariance(kind, s, alpha, delta):
    r = rot(delta)
    lhs = dipole_matrix(kind, s, alpha + delta).as_array()
    rhs = r @ dipole_matrix(kind, s, alpha).as_array() @ r.T
    assert np.allclose(lhs, rhs, rtol=0, atol=1e-12 * math.pi * s * s)


@pytest.mark.parametrize("kind", [MC, RI])
def test_periodicity(kind):
    for alpha in np.linspace(0, math.pi, 7):
        a = dipole_matrix(kind, 0.3, alpha).as_array()
        b = dipole_matrix(kind, 0.3, alpha + math.pi).as_array()
        assert np.allclose(a, b, rtol=0, atol=1e-15)


@given(sizes, angles)
def test_duality(s, alpha):
    r = dipole_matrix(RI, s, alpha).as_array()
    m = dipole_matrix(MC, s, alpha + math.pi / 2).as_array()
    assert np.allclose(r, -m, rtol=0, atol=1e-13 * math.pi * s * s)


@settings(max_examples=50)
@given(kinds, sizes, st.floats(0.1, 10.0), angles)
def test_quadratic_scaling(kind, s, c, alpha):
    a = dipole_matrix(kind, c * s, alpha).as_array()
    b = c * c * dipole_matrix(kind, s, alpha).as_array()
    assert np.allclose(a, b, rtol=1e-13, atol=1e-14 * np.abs(b).max())
