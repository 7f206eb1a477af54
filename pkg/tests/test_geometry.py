import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invlab.geometry import (
    Ball,
    BallIntersection,
    ComplexPoint,
    DimensionMismatchError,
    EmptyIntersectionError,
    HalfDiscScaled,
    HalfPlane,
    MembershipError,
    Polydisc,
    Product,
    ReinhardtEllipsoid,
    UnitDisc,
    boundary_distance,
    contains,
    contains_batch,
    dimension,
    intersect_with_ball,
)


def test_contains_examples():
    assert contains(HalfDiscScaled(1.0), 0.5j)
    assert not contains(HalfDiscScaled(1.0), 2j)
    assert not contains(UnitDisc(), 1.0)  # boundary excluded


def test_boundary_distance_examples():
    assert boundary_distance(HalfPlane(), 0.3 + 0.2j) == pytest.approx(0.2, abs=1e-15)
    assert boundary_distance(HalfDiscScaled(1.0), 0.5j) == pytest.approx(0.5, abs=1e-15)
    assert boundary_distance(Polydisc((1.0, 1.0)), (0.5, 0.3)) == pytest.approx(
        0.5, abs=1e-15
    )


def test_intersect_with_ball_normalizes_halfplane():
    assert intersect_with_ball(HalfPlane(), 0, 1.0) == HalfDiscScaled(1.0)
    assert intersect_with_ball(HalfPlane(), 0, 0.25) == HalfDiscScaled(0.25)
    assert contains(intersect_with_ball(HalfPlane(), 0, 1.0), 0.5j)


def test_intersect_with_ball_generic_cap():
    cap = intersect_with_ball(UnitDisc(), 0.5, 0.3)
    assert isinstance(cap, BallIntersection)
    assert contains(cap, 0.5)
    assert not contains(cap, -0.5)
    assert boundary_distance(cap, 0.5) == pytest.approx(0.3, abs=1e-15)


def test_empty_intersection_rejected():
    with pytest.raises(EmptyIntersectionError):
        intersect_with_ball(HalfPlane(), -5j, 1.0)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        contains(Ball(2), 0.5)
    with pytest.raises(DimensionMismatchError):
        boundary_distance(UnitDisc(), (0.1, 0.2))


def test_membership_required_for_distance():
    with pytest.raises(MembershipError):
        boundary_distance(UnitDisc(), 1.0)
    with pytest.raises(MembershipError):
        boundary_distance(HalfPlane(), -1j)


def _halfdisc_brute_delta(z: complex, r: float, samples: int = 1000) -> float:
    """Brute-force distance to the half-disc boundary: grid plus ternary polish."""

    def seg(t):
        return complex(-r + 2 * r * t, 0.0)

    def arc(t):
        return r * np.exp(1j * np.pi * t)

    best = math.inf
    for piece in (seg, arc):
        ts = np.linspace(0.0, 1.0, samples)
        ds = np.abs(np.array([piece(t) for t in ts]) - z)
        i = int(np.argmin(ds))
        lo = ts[max(i - 1, 0)]
        hi = ts[min(i + 1, samples - 1)]
        for _ in range(80):
            m1 = lo + (hi - lo) / 3
            m2 = hi - (hi - lo) / 3
            if abs(piece(m1) - z) < abs(piece(m2) - z):
                hi = m2
            else:
                lo = m1
        best = min(best, abs(piece(0.5 * (lo + hi)) - z))
    return best


@settings(max_examples=40, deadline=None)
@given(
    rr=st.floats(0.05, 0.95),
    theta=st.floats(0.05, 0.95),
    radius=st.floats(0.3, 1.0),
)
def test_halfdisc_distance_matches_brute_force(rr, theta, radius):
    z = radius * rr * np.exp(1j * np.pi * theta)
    z = complex(z)
    dom = HalfDiscScaled(radius)
    assert contains(dom, z)
    formula = boundary_distance(dom, z)
    assert formula == pytest.approx(min(z.imag, radius - abs(z)), abs=1e-15)
    assert abs(formula - _halfdisc_brute_delta(z, radius)) <= 1e-6


@settings(max_examples=60, deadline=None)
@given(x=st.floats(-0.95, 0.95), y=st.floats(-0.95, 0.95))
def test_distance_positive_iff_member(x, y):
    z = complex(x, y)
    for dom in (UnitDisc(), HalfPlane(), HalfDiscScaled(0.8)):
        if contains(dom, z):
            assert boundary_distance(dom, z) > 0
        else:
            with pytest.raises(MembershipError):
                boundary_distance(dom, z)


def test_cap_monotonicity():
    dom = UnitDisc()
    cap = intersect_with_ball(dom, 0.2, 0.5)
    for z in (0.2, 0.3 + 0.1j, 0.1 - 0.2j):
        assert boundary_distance(cap, z) <= boundary_distance(dom, z) + 1e-15


def test_product_domain():
    dom = Product((UnitDisc(), HalfPlane()))
    assert dimension(dom) == 2
    assert contains(dom, (0.5, 1j))
    assert not contains(dom, (0.5, -1j))
    assert boundary_distance(dom, (0.5, 0.2j)) == pytest.approx(0.2, abs=1e-15)


def test_ball_distance():
    assert boundary_distance(Ball(2), (0.3, 0.4j)) == pytest.approx(0.5, abs=1e-15)


def test_ellipsoid_single_exponent_is_disc():
    dom = ReinhardtEllipsoid((3.0,))
    assert contains(dom, 0.9)
    assert boundary_distance(dom, 0.3 + 0.4j) == pytest.approx(0.5, abs=1e-12)


def test_ellipsoid_matches_ball_when_exponents_are_one():
    dom = ReinhardtEllipsoid((1.0, 1.0))
    for z in ((0.3, 0.4j), (0.1 + 0.1j, -0.2)):
        got = boundary_distance(dom, z)
        exact = 1.0 - float(np.linalg.norm(np.asarray(z, dtype=complex)))
        assert got == pytest.approx(exact, abs=1e-7)


def test_ellipsoid_membership_and_positivity():
    dom = ReinhardtEllipsoid((1.0, 2.0))
    assert contains(dom, (0.5, 0.5))
    assert boundary_distance(dom, (0.5, 0.5)) > 0
    assert not contains(dom, (1.0, 0.5))


def test_contains_batch_agrees_with_scalar():
    pts = np.array([[0.5j], [2j], [0.99j], [0.5 + 0.1j]])
    dom = HalfDiscScaled(1.0)
    got = contains_batch(dom, pts)
    expected = [contains(dom, row) for row in pts]
    assert list(got) == expected


def test_point_validation():
    with pytest.raises(ValueError):
        ComplexPoint((complex("inf"),))
    with pytest.raises(ValueError):
        ComplexPoint(())
    with pytest.raises(ValueError):
        HalfDiscScaled(1.5)
    with pytest.raises(ValueError):
        Polydisc((1.0, -1.0))
