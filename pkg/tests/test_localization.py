import math

import numpy as np
import pytest

from invlab.distances import localization_gap
from invlab.localization import (
    VIOLATION_INTEGRAL_DIVERGES,
    VIOLATION_NOT_UNBOUNDED,
    VIOLATION_RATIO_NOT_DECREASING,
    BoundParams,
    BoundReport,
    GeometricGrid,
    check_admissible,
    empirical_constant,
    fit_exponent,
    integrated_weight_bound,
    linear_weight,
    near_boundary_lower_bound,
    near_boundary_upper_bound,
    planar_gap_bound,
    power_weight,
    ratio_weight_bound,
    refined_excursion_bound,
    sharpness_sweep,
    tabulated_weight,
    two_term_gap_bound,
    weight_integral,
)
from invlab.sampling import halfdisc_pairs


def test_admissibility_examples():
    assert check_admissible(power_weight(1.0, 0.5)) == []
    assert check_admissible(linear_weight(3.0)) == []
    square = check_admissible(lambda x: x**2)
    assert VIOLATION_RATIO_NOT_DECREASING in square
    const = check_admissible(lambda x: 1.0)
    assert VIOLATION_NOT_UNBOUNDED in const
    assert VIOLATION_INTEGRAL_DIVERGES in const


def test_admissibility_grid_validation():
    with pytest.raises(ValueError):
        GeometricGrid(lo=1.0, hi=0.5)
    grid = GeometricGrid(lo=1e-6, hi=1.0, points_per_decade=32)
    assert check_admissible(power_weight(2.0, 0.3), grid) == []


def test_weight_integral_examples():
    assert weight_integral(power_weight(1.0, 0.5), 0.04) == pytest.approx(
        0.4, abs=1e-15
    )
    assert weight_integral(linear_weight(2.5), 0.3) == pytest.approx(0.75, abs=1e-15)
    assert weight_integral(power_weight(1.0, 0.5), 0.0) == 0.0


def test_weight_integral_quadrature_matches_closed_form():
    for c, alpha, T in [(1.0, 0.5, 0.04), (3.0, 0.25, 0.7), (0.2, 1.0, 1e-3)]:
        closed = c * T**alpha / alpha
        quadrature = weight_integral(lambda x: c * x**alpha, T)
        assert quadrature == pytest.approx(closed, rel=1e-8)


def test_tabulated_weight():
    xs = np.geomspace(1e-9, 10.0, 120)
    w = tabulated_weight(xs, np.sqrt(xs))
    assert w(0.04) == pytest.approx(0.2, rel=1e-10)
    assert weight_integral(w, 0.04) == pytest.approx(0.4, rel=1e-6)
    flat = tabulated_weight((1e-9, 10.0), (1.0, 1.0))
    with pytest.raises(ValueError):
        weight_integral(flat, 0.5)


def test_integrated_weight_bound_example():
    params = BoundParams(c1=1.0, c2=1.0, m=1)
    got = integrated_weight_bound(power_weight(1.0, 0.5), params, 0.0, 1e-4)
    assert got == pytest.approx(0.2, abs=1e-12)
    assert integrated_weight_bound(power_weight(1.0, 0.5), params, 0.3j, 0.3j) == 0.0
    # monotone in the separation
    seps = np.geomspace(1e-6, 1e-2, 12)
    vals = [
        integrated_weight_bound(power_weight(1.0, 0.5), params, 0.0, s) for s in seps
    ]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_ratio_weight_bound_example():
    params = BoundParams(c3=1.0, m=1)
    got = ratio_weight_bound(linear_weight(1.0), params, 0.0, 0.04, 0.01)
    assert got == pytest.approx(1.21, abs=1e-12)
    assert ratio_weight_bound(linear_weight(1.0), params, 0.2, 0.2, 0.0) == 1.0
    got = ratio_weight_bound(power_weight(1.0, 0.5), params, 0.0, 1e-4, 0.0)
    assert got == pytest.approx(1.1, abs=1e-12)


def test_refined_excursion_bound_example():
    assert refined_excursion_bound(0.0, 0.01, 0.04, 0.04, 1.0, 1) == pytest.approx(
        0.02, abs=1e-15
    )
    assert refined_excursion_bound(0.3, 0.3, 0.1, 0.2, 1.0, 1) == 0.0
    a = refined_excursion_bound(0.0, 0.01, 0.04, 0.09, 2.0, 2)
    b = refined_excursion_bound(0.0, 0.01, 0.09, 0.04, 2.0, 2)
    assert a == b  # symmetric in the two boundary distances


def test_planar_gap_bound_example():
    got = planar_gap_bound(1.0, 0.5j, 0.25j, 0.5, 0.25)
    assert got == pytest.approx(0.25 * (0.25 + math.sqrt(0.125)), abs=1e-15)
    assert got == pytest.approx(0.1508883, abs=1e-7)
    assert planar_gap_bound(3.0, 0.5j, 0.25j, 0.5, 0.25) == pytest.approx(
        3 * got, rel=1e-15
    )
    assert planar_gap_bound(1.0, 0.2j, 0.2j, 0.2, 0.2) == 0.0


def test_near_boundary_bounds():
    got = near_boundary_upper_bound(0.5j, 0.25j, 0.5, 0.25, 2.0)
    assert got == pytest.approx(math.log(2.4142136), abs=1e-7)
    assert near_boundary_upper_bound(0.3j, 0.3j, 0.3, 0.3, 2.0) == 0.0
    low = near_boundary_lower_bound(0.5j, 0.25j, 0.5, 1.0, 1)
    assert low == pytest.approx(math.log(1 + 0.25 / math.sqrt(0.5)), abs=1e-15)
    with pytest.raises(ValueError):
        near_boundary_upper_bound(0.5j, 0.25j, 0.0, 0.25, 1.0)


def test_empirical_constant_examples():
    report = empirical_constant(
        [(0.5j, 0.25j)],
        lambda z, w: localization_gap(z, w).gap,
        lambda z, w: planar_gap_bound(1.0, z, w, z.imag, w.imag),
    )
    expected = (0.5 * math.log(1.25)) / (0.25 * (0.25 + math.sqrt(0.125)))
    assert report.max_ratio == pytest.approx(expected, abs=1e-12)
    assert report.max_ratio == pytest.approx(0.7394, abs=1e-4)
    assert report.argmax_pair == (0.5j, 0.25j)
    assert report.sample_count == 1

    same = empirical_constant([(1j, 2j)], lambda z, w: 3.0, lambda z, w: 3.0)
    assert same.max_ratio == 1.0
    zero = empirical_constant([(1j, 2j)], lambda z, w: 0.0, lambda z, w: 3.0)
    assert zero.max_ratio == 0.0
    with pytest.raises(ValueError):
        empirical_constant([], lambda z, w: 1.0, lambda z, w: 1.0)
    with pytest.raises(ValueError):
        empirical_constant([(1j, 1j)], lambda z, w: 1.0, lambda z, w: 1.0)


def test_fit_exponent_examples():
    h = np.geomspace(1e-4, 1.0, 9)
    assert fit_exponent(list(zip(h, h**2))) == pytest.approx(2.0, abs=1e-12)
    assert fit_exponent([(x, 5.0) for x in h]) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        fit_exponent([(1.0, 1.0), (2.0, 4.0)])
    with pytest.raises(ValueError):
        fit_exponent([(1.0, 1.0), (2.0, -4.0), (3.0, 9.0)])


def test_dyadic_gap_slope_is_two():
    samples = []
    for k in range(6, 15):
        h = 2.0**-k
        samples.append((h, localization_gap(2j * h, 1j * h).gap))
    assert fit_exponent(samples) == pytest.approx(2.0, abs=0.05)


def test_sharpness_sweep_families():
    rows = sharpness_sweep([1e-3])
    by_family = {r.family: r for r in rows}
    assert by_family["balanced"].ratio == pytest.approx(1.0, abs=0.02)
    assert by_family["drop-boundary"].ratio > 10.0
    assert by_family["drop-separation"].ratio > 10.0

    finite = sharpness_sweep([0.05])
    assert all(math.isfinite(r.ratio) for r in finite)
    with pytest.raises(ValueError):
        sharpness_sweep([0.5])
    with pytest.raises(ValueError):
        sharpness_sweep([0.0])


def test_one_term_families_with_both_term_bound_stay_tame():
    # with both terms kept, the same families do not blow up
    for t in (1e-3, 1e-2):
        for w in (1j * t * (1 - 1e-6), 1j * t * t):
            gap = localization_gap(1j * t, w).gap
            assert gap / two_term_gap_bound(1j * t, w) <= 1.1


def test_gap_under_planar_shape_on_cap():
    z, w = halfdisc_pairs(37, 2_000, 0.05)
    worst = 0.0
    for zz, ww in zip(z, w):
        gap = localization_gap(complex(zz), complex(ww)).gap
        shape = planar_gap_bound(1.0, complex(zz), complex(ww), zz.imag, ww.imag)
        if shape > 0:
            worst = max(worst, gap / shape)
    assert worst <= 2.0


def test_ratio_shape_report_records_constant_and_exponent():
    # ratio bound: k_loc/k_glob - 1 against delta(z) + |z-w|^(1/2)
    pairs = []
    for k in range(6, 15):
        h = 2.0**-k
        pairs.append((2j * h, 1j * h))
    report = empirical_constant(
        pairs,
        lambda z, w: localization_gap(z, w).gap
        / localization_gap(z, w).k_global,
        lambda z, w: z.imag + abs(z - w) ** 0.5,
    )
    assert 0.0 < report.max_ratio < 5.0
    # the fitted rate on this family beats the conservative 1/2 guarantee
    slope = fit_exponent(
        [
            (abs(z - w), localization_gap(z, w).gap / localization_gap(z, w).k_global)
            for z, w in pairs
        ]
    )
    assert slope > 1.0
    enriched = BoundReport(
        report.max_ratio, report.argmax_pair, report.sample_count, slope
    )
    assert enriched.fitted_exponent == slope


def test_bound_params_validation():
    with pytest.raises(ValueError):
        BoundParams(c1=-1.0)
    with pytest.raises(ValueError):
        BoundParams(m=0)
    with pytest.raises(ValueError):
        power_weight(1.0, 2.0)
    with pytest.raises(ValueError):
        linear_weight(0.0)
