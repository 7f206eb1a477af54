import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invlab import conformal
from invlab.geometry import (
    Ball,
    HalfDiscScaled,
    HalfPlane,
    MembershipError,
    Polydisc,
    Product,
    ReinhardtEllipsoid,
    UnitDisc,
    UnsupportedDomainError,
)
from invlab.metrics import (
    bergman_density,
    bergman_metric,
    custom_density,
    kobayashi_density,
    kobayashi_royden_density,
    normalized_bergman,
    normalized_bergman_density,
    pullback,
    pullback_density,
    squeezing_sandwich,
)
from invlab.sampling import ball_points, disc_points, halfdisc_points

INV_CAYLEY = conformal.Mobius(-1, 1j, 1, 1j)  # upper half-plane onto the unit disc


def test_kobayashi_examples():
    assert kobayashi_royden_density(UnitDisc(), 0, 1) == pytest.approx(1.0, abs=1e-15)
    assert kobayashi_royden_density(UnitDisc(), 0.5, 1) == pytest.approx(
        4.0 / 3.0, abs=1e-15
    )
    assert kobayashi_royden_density(HalfDiscScaled(1.0), 0.5j, 1) == pytest.approx(
        5.0 / 3.0, abs=1e-13
    )
    assert kobayashi_royden_density(Polydisc((1.0, 1.0)), (0, 0), (1, 2)) == 2.0
    assert kobayashi_royden_density(HalfPlane(), 0.5j, 1) == pytest.approx(
        1.0, abs=1e-15
    )


def test_bergman_examples():
    assert bergman_metric(UnitDisc(), 0, 1) == pytest.approx(math.sqrt(2), abs=1e-15)
    assert bergman_metric(Ball(2), (0, 0), (1, 0)) == pytest.approx(
        math.sqrt(3), abs=1e-15
    )
    assert bergman_metric(UnitDisc(), 0.5, 1) == pytest.approx(
        math.sqrt(2) * 4.0 / 3.0, abs=1e-15
    )


def test_normalized_bergman_examples():
    assert normalized_bergman(UnitDisc(), 0, 1) == pytest.approx(1.0, abs=1e-15)
    assert normalized_bergman(Ball(2), (0, 0), (1, 0)) == pytest.approx(1.0, abs=1e-15)
    assert normalized_bergman(UnitDisc(), 0.5, 1) == pytest.approx(
        4.0 / 3.0, abs=1e-15
    )


def test_pullback_examples():
    hp = kobayashi_density(HalfPlane())
    got = pullback_density(conformal.HalfDiscToHalfPlane(), hp, 0.5j, 1)
    assert got == pytest.approx(5.0 / 3.0, abs=1e-13)

    disc = kobayashi_density(UnitDisc())
    assert pullback_density(conformal.Identity(), disc, 0.3, 1) == pytest.approx(
        kobayashi_royden_density(UnitDisc(), 0.3, 1), abs=1e-15
    )
    # the half-plane density is the disc density seen through the inverse Cayley map
    assert pullback_density(INV_CAYLEY, disc, 1j, 1) == pytest.approx(0.5, abs=1e-15)


@settings(max_examples=50, deadline=None)
@given(
    rr=st.floats(0.05, 0.9),
    th=st.floats(0.05, 0.95),
    lam_re=st.floats(-3, 3),
    lam_im=st.floats(-3, 3),
)
def test_absolute_homogeneity(rr, th, lam_re, lam_im):
    lam = complex(lam_re, lam_im)
    z = complex(rr * np.exp(1j * np.pi * th))
    X = 0.7 - 0.2j
    for density in (
        kobayashi_density(UnitDisc()),
        kobayashi_density(HalfPlane()),
        kobayashi_density(HalfDiscScaled(1.0)),
        bergman_density(UnitDisc()),
    ):
        if density.domain is not None:
            from invlab.geometry import contains

            if not contains(density.domain, z):
                continue
        base = density.evaluate(z, X)
        scaled = density.evaluate(z, lam * X)
        assert scaled == pytest.approx(abs(lam) * base, rel=1e-12, abs=1e-12)


def test_homogeneity_in_higher_dimension():
    dens = kobayashi_density(Ball(2))
    z = (0.2 + 0.1j, -0.3)
    X = (0.4, 0.5j)
    lam = 1.7 - 0.3j
    assert dens.evaluate(z, tuple(lam * x for x in X)) == pytest.approx(
        abs(lam) * dens.evaluate(z, X), rel=1e-12
    )


def test_conformal_invariance_on_catalog_pairs():
    hp = kobayashi_density(HalfPlane())
    hd = kobayashi_density(HalfDiscScaled(1.0))
    for z in halfdisc_points(3, 200, 0.95):
        a = pullback(conformal.HalfDiscToHalfPlane(), hp).evaluate(z, 1.0)
        b = hd.evaluate(z, 1.0)
        assert a == pytest.approx(b, rel=1e-12)
    disc = kobayashi_density(UnitDisc())
    cay = conformal.Cayley()
    for zeta in disc_points(4, 200, 0.95):
        a = pullback(cay, hp).evaluate(zeta, 1.0)
        b = disc.evaluate(zeta, 1.0)
        assert a == pytest.approx(b, rel=1e-12)
    # scaling: the radius-r disc density is the unit disc density through z -> z/r
    r = 0.35
    scaled = kobayashi_density(Polydisc((r,)))
    via_scale = pullback(conformal.Scale(1.0 / r), disc)
    for z in disc_points(8, 200, 0.95 * r):
        assert scaled.evaluate(z, 0.3 - 0.4j) == pytest.approx(
            via_scale.evaluate(z, 0.3 - 0.4j), rel=1e-12
        )


def test_normalized_bergman_equals_kobayashi_on_disc_and_ball():
    rng = np.random.default_rng(11)
    zs = disc_points(5, 10_000, 0.98)
    Xs = rng.standard_normal(10_000) + 1j * rng.standard_normal(10_000)
    nb = normalized_bergman_density(UnitDisc()).evaluate_batch(
        zs[:, None], Xs[:, None]
    )
    kb = kobayashi_density(UnitDisc()).evaluate_batch(zs[:, None], Xs[:, None])
    np.testing.assert_allclose(nb, kb, rtol=1e-12)

    zb = ball_points(6, 2_000, 2, 0.95)
    Xb = rng.standard_normal((2_000, 2)) + 1j * rng.standard_normal((2_000, 2))
    nb2 = normalized_bergman_density(Ball(2)).evaluate_batch(zb, Xb)
    kb2 = kobayashi_density(Ball(2)).evaluate_batch(zb, Xb)
    np.testing.assert_allclose(nb2, kb2, rtol=1e-12)


def test_squeezing_sandwich_on_bidisc():
    sigma = 1.0 / math.sqrt(2.0)
    rng = np.random.default_rng(2)
    pts = np.stack(
        [disc_points(21, 300, 0.97), disc_points(22, 300, 0.97)], axis=1
    )
    for z in pts[:50]:
        X = tuple(rng.standard_normal(2) + 1j * rng.standard_normal(2))
        ratio, lo, hi = squeezing_sandwich(Polydisc((1.0, 1.0)), z, X, sigma)
        assert lo <= ratio <= hi


def test_product_density_is_max_of_factors():
    dom = Product((UnitDisc(), HalfPlane()))
    dens = kobayashi_density(dom)
    val = dens.evaluate((0.5, 2j), (1.0, 1.0))
    expected = max(
        kobayashi_royden_density(UnitDisc(), 0.5, 1.0),
        kobayashi_royden_density(HalfPlane(), 2j, 1.0),
    )
    assert val == pytest.approx(expected, abs=1e-15)


def test_infinity_marker_propagates():
    inside = HalfDiscScaled(0.5)

    def fn(zc, Xc):
        from invlab.geometry import contains

        return abs(Xc[0]) if contains(inside, zc) else math.inf

    dens = custom_density(fn, HalfPlane())
    assert dens.evaluate(0.25j, 1.0) == 1.0
    assert dens.evaluate(2j, 1.0) == math.inf

    from invlab.geodesics import Polyline, finsler_length

    t = np.linspace(0.0, 1.0, 9)
    nodes = ((1 - t) * 0.25j + t * (0.6 + 0.25j))[:, None]
    curve = Polyline(HalfPlane(), nodes)
    assert finsler_length(dens, curve) == math.inf


def test_membership_errors():
    with pytest.raises(MembershipError):
        kobayashi_royden_density(UnitDisc(), 1.5, 1.0)
    with pytest.raises(MembershipError):
        bergman_metric(UnitDisc(), 1.0, 1.0)


def test_unsupported_variants():
    with pytest.raises(UnsupportedDomainError):
        kobayashi_density(ReinhardtEllipsoid((1.0, 2.0)))
    with pytest.raises(UnsupportedDomainError):
        bergman_density(HalfPlane())
    from invlab.geometry import BallIntersection, ComplexPoint

    cap = BallIntersection(UnitDisc(), ComplexPoint((0j,)), 0.5)
    with pytest.raises(UnsupportedDomainError):
        kobayashi_density(cap)
