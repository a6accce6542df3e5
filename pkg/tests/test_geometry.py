import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardy_mf.errors import DomainError
from hardy_mf.geometry import (
    DiscPoint,
    distance_from_origin,
    geodesic_distance,
    mobius,
    reflect,
    sinh_half_distance,
)


@st.composite
def disc_points(draw, rmax=0.95):
    r = draw(st.floats(0.0, rmax))
    t = draw(st.floats(0.0, 2 * math.pi))
    return (r * math.cos(t), r * math.sin(t))


def close(p, q, tol):
    return math.hypot(p[0] - q[0], p[1] - q[1]) <= tol


def test_mobius_sends_zero_to_a():
    assert mobius((0.3, 0.0), (0.0, 0.0)) == pytest.approx((0.3, 0.0), abs=1e-16)


def test_mobius_sends_a_to_zero():
    assert mobius((0.3, 0.0), (0.3, 0.0)) == pytest.approx((0.0, 0.0), abs=1e-16)


def test_mobius_involution_example():
    a = (0.3, 0.0)
    assert close(mobius(a, mobius(a, (0.1, 0.2))), (0.1, 0.2), 1e-14)


def test_mobius_at_origin_is_point_reflection():
    assert mobius((0.0, 0.0), (0.2, -0.4)) == pytest.approx((-0.2, 0.4), abs=1e-16)


def test_mobius_rejects_outside():
    with pytest.raises(DomainError):
        mobius((1.0, 0.0), (0.0, 0.0))
    with pytest.raises(DomainError):
        mobius((0.0, 0.0), (0.6, 0.8))


def test_disc_point_gap_near_boundary():
    # 1 - |x|^2 for x1 = 1 - 1e-12 is about 2e-12; the naive form loses all digits
    p = DiscPoint(1.0 - 1e-12, 0.0)
    assert p.conformal_gap() == pytest.approx(2e-12, rel=1e-3)


def test_distance_from_origin_half():
    assert geodesic_distance((0.0, 0.0), (0.5, 0.0)) == pytest.approx(math.log(3.0), rel=1e-15)
    assert distance_from_origin((0.5, 0.0)) == pytest.approx(math.log(3.0), rel=1e-15)


def test_distance_zero_on_diagonal():
    assert geodesic_distance((0.2, 0.1), (0.2, 0.1)) == 0.0


def test_distance_symmetric_example():
    x, y = (0.2, 0.1), (-0.4, 0.3)
    assert abs(geodesic_distance(x, y) - geodesic_distance(y, x)) <= 1e-14


def test_distance_rejects_outside():
    with pytest.raises(DomainError):
        geodesic_distance((0.0, 0.0), (1.0, 0.0))


def test_sinh_half_distance_example():
    assert sinh_half_distance((0.0, 0.0), (0.5, 0.0)) == pytest.approx(1.0 / math.sqrt(3.0), rel=1e-15)
    assert sinh_half_distance((0.0, 0.0), (0.5, 0.0)) == pytest.approx(math.sinh(math.log(3.0) / 2), rel=1e-15)
    assert sinh_half_distance((0.3, 0.1), (0.3, 0.1)) == 0.0


def test_sinh_half_distance_boundary_blowup():
    # grows like (1 - |y|^2)^(-1/2) as |y| -> 1
    for e in (1e-4, 1e-6, 1e-8):
        y = (1.0 - e, 0.0)
        gap = (1.0 - y[0]) * (1.0 + y[0])
        assert sinh_half_distance((0.0, 0.0), y) * math.sqrt(gap) == pytest.approx(1.0 - e, rel=1e-12)


def test_reflect_at_origin_is_conjugation():
    assert reflect((0.0, 0.0), (0.2, 0.5)) == pytest.approx((0.2, -0.5), abs=1e-16)


def test_reflect_involution_example():
    a, x = (0.4, 0.1), (-0.2, 0.3)
    assert close(reflect(a, reflect(a, x)), x, 1e-13)


def test_reflect_fixes_its_geodesic():
    a = (0.25, 0.0)
    p = mobius(a, (0.37, 0.0))
    assert close(reflect(a, p), p, 1e-15)


@settings(max_examples=300, deadline=None)
@given(disc_points(), disc_points())
def test_mobius_involution_property(a, x):
    assert close(mobius(a, mobius(a, x)), x, 1e-13)


@settings(max_examples=300, deadline=None)
@given(disc_points(0.9), disc_points(0.9), disc_points(0.9))
def test_mobius_isometry_property(a, x, y):
    d = geodesic_distance(x, y)
    assert abs(geodesic_distance(mobius(a, x), mobius(a, y)) - d) <= 1e-12 * max(1.0, d)


@settings(max_examples=300, deadline=None)
@given(disc_points(), disc_points())
def test_sinh_identity_property(x, y):
    lhs = math.sinh(0.5 * geodesic_distance(x, y))
    rhs = sinh_half_distance(x, y)
    assert abs(lhs - rhs) <= 1e-12 * max(rhs, 1e-300) or lhs == rhs == 0.0


@settings(max_examples=300, deadline=None)
@given(disc_points(0.9), disc_points(0.9), disc_points(0.9))
def test_reflect_preserves_distance(a, x, y):
    d = geodesic_distance(x, y)
    assert abs(geodesic_distance(reflect(a, x), reflect(a, y)) - d) <= 1e-12 * max(1.0, d)


@settings(max_examples=300, deadline=None)
@given(disc_points(), disc_points())
def test_reflect_involution_property(a, x):
    assert close(reflect(a, reflect(a, x)), x, 1e-13)


@settings(max_examples=300, deadline=None)
@given(disc_points(), disc_points())
def test_reflect_matches_literal_composition(a, x):
    y = mobius(a, x)
    literal = mobius(a, (y.x1, -y.x2))
    assert close(reflect(a, x), literal, 1e-12)
