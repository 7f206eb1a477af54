"""Closed-form invariant distances on the catalog, and the half-disc gap.

Distance convention: on every catalog member the distance is atanh of a
Moebius-invariant ratio m in [0, 1).  On the upper half-plane
m(z, w) = |z - w| / |z - conj w|; on the unit disc it is the classical
pseudohyperbolic ratio |z - w| / |1 - z conj w|; the unit upper half-disc
transfers to the half-plane through f(z) = ((z + 1)/(z - 1))^2; the ball uses
the automorphism moving one point to the origin; polydiscs and products take
the max over factors.

atanh is evaluated as log(1 + m) - log(1 - m^2) / 2, with the complement
1 - m^2 supplied by a cancellation-free closed form per domain:

* half-plane:      1 - m^2 = 4 Im z Im w / |z - conj w|^2
* unit disc:       1 - m^2 = (1 - |z|^2)(1 - |w|^2) / |1 - z conj w|^2
* ball:            1 - m^2 = (1 - |z|^2)(1 - |w|^2) / |1 - <z, w>|^2

(The half-plane complement carries |z - conj w|^2 in the denominator, the
form consistent with m = |z - w| / |z - conj w|; this is pinned by the
brute-force identity test in the suite.)  Ratios within 1e-15 of 1 overflow
to the +inf marker uniformly.

The localization gap on the half-disc splits exactly into two terms:

* a boundary term, log of 1 plus a quantity proportional to Im z Im w, and
* a separation term, -log(1 - |z - w|^2 / |1 - z conj w|^2) / 2,

and the gap is always computed by both routes (term sum, and difference of
the two distances) with the disagreement stored as a residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .geometry import (
    Ball,
    Domain,
    HalfDiscScaled,
    HalfPlane,
    MembershipError,
    PointLike,
    Polydisc,
    Product,
    UnitDisc,
    UnsupportedDomainError,
    as_coords,
    contains,
    dimension,
)

OVERFLOW_EDGE = 1.0 - 1e-15


@dataclass(frozen=True)
class DistanceValue:
    """A nonnegative distance (or +inf marker) with its computation route."""

    value: float
    method: str  # closed_form | pullback | solver

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class GapDecomposition:
    """Two-term split of (half-disc distance) - (half-plane distance)."""

    gap: float
    term_boundary: float
    term_separation: float
    residual: float
    k_local: float
    k_global: float

    def __post_init__(self):
        if abs(self.gap - (self.term_boundary + self.term_separation)) > 1e-12:
            raise ValueError("gap must equal the sum of its two terms")


def _atanh_stable(m, comp):
    """atanh m with the complement 1 - m^2 given in stable form; overflows to +inf."""
    m = np.asarray(m, dtype=float)
    comp = np.asarray(comp, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.log1p(m) - 0.5 * np.log(comp)
    return np.where(m >= OVERFLOW_EDGE, math.inf, vals)


# --------------------------------------------------------------------------
# batch cores (plain complex arrays, no validation)
# --------------------------------------------------------------------------

def halfplane_ratio(z, w):
    """m(z, w) = |z - w| / |z - conj w| on the upper half-plane."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.abs(z - w) / np.abs(z - np.conj(w))


def halfplane_complement(z, w):
    """1 - m(z, w)^2 in cancellation-free form: 4 Im z Im w / |z - conj w|^2."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return 4.0 * z.imag * w.imag / np.abs(z - np.conj(w)) ** 2


def halfplane_distance_batch(z, w):
    return _atanh_stable(halfplane_ratio(z, w), halfplane_complement(z, w))


def disc_ratio(z, w):
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.abs(z - w) / np.abs(1.0 - z * np.conj(w))


def disc_complement(z, w):
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    a2 = np.abs(z) ** 2
    b2 = np.abs(w) ** 2
    return (1.0 - a2) * (1.0 - b2) / np.abs(1.0 - z * np.conj(w)) ** 2


def disc_distance_batch(z, w):
    return _atanh_stable(disc_ratio(z, w), disc_complement(z, w))


def halfdisc_ratio_parts(z, w):
    """(m, 1 - m^2) for the unit upper half-disc, both in stable form.

    The ratio transfers from the half-plane by the factor
    |1 - z w| / |1 - z conj w|, and the complement picks up the disc
    complement of the pair on top of the half-plane complement.
    """
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    mu = np.abs(1.0 - z * w) / np.abs(1.0 - z * np.conj(w))
    m = mu * halfplane_ratio(z, w)
    comp = halfplane_complement(z, w) * disc_complement(z, w)
    return m, comp


def halfdisc_distance_batch(z, w, radius: float = 1.0):
    m, comp = halfdisc_ratio_parts(
        np.asarray(z, dtype=complex) / radius, np.asarray(w, dtype=complex) / radius
    )
    return _atanh_stable(m, comp)


def gap_terms_batch(z, w):
    """(boundary term, separation term) of the unit half-disc gap, vectorized."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    zw = np.abs(z - w)
    zwbar = np.abs(z - np.conj(w))
    d1 = np.abs(1.0 - z * w)
    d2 = np.abs(1.0 - z * np.conj(w))
    amount = zw * (z.imag * w.imag / (zw + zwbar)) * 4.0 / ((d1 + d2) * d2)
    t_boundary = np.log1p(amount)
    q = zw**2 / d2**2
    t_separation = -0.5 * np.log1p(-q)
    return t_boundary, t_separation


def _ball_mobius(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """The ball automorphism sending a to 0, evaluated at x."""
    na2 = float(np.sum(np.abs(a) ** 2))
    if na2 == 0.0:
        return -x
    s = math.sqrt(max(0.0, 1.0 - na2))
    ip = complex(np.sum(x * np.conj(a)))
    proj = (ip / na2) * a
    orth = x - proj
    return (a - proj - s * orth) / (1.0 - ip)


def ball_distance_batch(Z, W):
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    W = np.atleast_2d(np.asarray(W, dtype=complex))
    m = np.array(
        [float(np.linalg.norm(_ball_mobius(zz, ww))) for zz, ww in zip(Z, W)]
    )
    nz2 = np.sum(np.abs(Z) ** 2, axis=1)
    nw2 = np.sum(np.abs(W) ** 2, axis=1)
    ip = np.sum(W * np.conj(Z), axis=1)
    comp = (1.0 - nz2) * (1.0 - nw2) / np.abs(1.0 - ip) ** 2
    return _atanh_stable(m, comp)


def polydisc_distance_batch(Z, W, radii):
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    W = np.atleast_2d(np.asarray(W, dtype=complex))
    r = np.asarray(radii, dtype=float)
    per = _atanh_stable(disc_ratio(Z / r, W / r), disc_complement(Z / r, W / r))
    return np.max(per, axis=1)


def distance_batch(domain: Domain) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Batch distance evaluator for a catalog domain, (m,n)x(m,n) -> (m,)."""
    if isinstance(domain, UnitDisc):
        return lambda Z, W: disc_distance_batch(
            np.atleast_2d(Z)[:, 0], np.atleast_2d(W)[:, 0]
        )
    if isinstance(domain, HalfPlane):
        return lambda Z, W: halfplane_distance_batch(
            np.atleast_2d(Z)[:, 0], np.atleast_2d(W)[:, 0]
        )
    if isinstance(domain, HalfDiscScaled):
        r = domain.radius
        return lambda Z, W: halfdisc_distance_batch(
            np.atleast_2d(Z)[:, 0], np.atleast_2d(W)[:, 0], r
        )
    if isinstance(domain, Ball):
        return ball_distance_batch
    if isinstance(domain, Polydisc):
        radii = domain.radii
        return lambda Z, W: polydisc_distance_batch(Z, W, radii)
    if isinstance(domain, Product):
        subs = [distance_batch(f) for f in domain.factors]
        dims = [dimension(f) for f in domain.factors]

        def core(Z, W):
            Z = np.atleast_2d(np.asarray(Z, dtype=complex))
            W = np.atleast_2d(np.asarray(W, dtype=complex))
            vals, k = [], 0
            for sub, d in zip(subs, dims):
                vals.append(sub(Z[:, k : k + d], W[:, k : k + d]))
                k += d
            return np.max(np.stack(vals), axis=0)

        return core
    raise UnsupportedDomainError(
        f"no closed-form distance for {type(domain).__name__}"
    )


# --------------------------------------------------------------------------
# scalar operations (validated)
# --------------------------------------------------------------------------

def _require_member(domain: Domain, z: PointLike, name: str) -> np.ndarray:
    coords = as_coords(z)
    if not contains(domain, coords):
        raise MembershipError(f"{name} = {coords.tolist()} is not in the domain")
    return coords


def mobius_halfplane(z: complex, w: complex) -> float:
    """The invariant ratio |z - w| / |z - conj w| for points of the upper half-plane."""
    z, w = complex(z), complex(w)
    if z.imag <= 0 or w.imag <= 0:
        raise MembershipError("both points must lie in the upper half-plane")
    return float(halfplane_ratio(z, w))


def kobayashi_distance(domain: Domain, z: PointLike, w: PointLike) -> DistanceValue:
    """Closed-form distance on a catalog domain; +inf marker past the overflow edge."""
    zc = _require_member(domain, z, "z")
    wc = _require_member(domain, w, "w")
    method = "pullback" if isinstance(domain, HalfDiscScaled) else "closed_form"
    value = float(distance_batch(domain)(zc[None, :], wc[None, :])[0])
    return DistanceValue(value, method)


def lempert_function(domain: Domain, z: PointLike, w: PointLike) -> DistanceValue:
    """One-disc distance; coincides with the Kobayashi distance on the convex-like catalog."""
    return kobayashi_distance(domain, z, w)


def caratheodory_distance(domain: Domain, z: PointLike, w: PointLike) -> DistanceValue:
    """Sup of pulled-back disc distances; equals the Kobayashi distance on the catalog."""
    return kobayashi_distance(domain, z, w)


def gap_term_boundary(z: complex, w: complex) -> float:
    """Gap term controlled by boundary proximity: it carries the factor Im z Im w."""
    _require_member(HalfDiscScaled(1.0), z, "z")
    _require_member(HalfDiscScaled(1.0), w, "w")
    return float(gap_terms_batch(complex(z), complex(w))[0])


def gap_term_separation(z: complex, w: complex) -> float:
    """Gap term controlled by separation: -log(1 - |z-w|^2/|1 - z conj w|^2) / 2."""
    _require_member(HalfDiscScaled(1.0), z, "z")
    _require_member(HalfDiscScaled(1.0), w, "w")
    return float(gap_terms_batch(complex(z), complex(w))[1])


def gap_term_boundary_leading(z: complex, w: complex) -> float:
    """Small-point leading form of the boundary term."""
    z, w = complex(z), complex(w)
    if z == w:
        raise ValueError("leading forms need distinct points")
    zw = abs(z - w)
    return 2.0 * zw * z.imag * w.imag / (zw + abs(z - w.conjugate()))


def gap_term_separation_leading(z: complex, w: complex) -> float:
    """Small-point leading form of the separation term: |z - w|^2 / 2."""
    z, w = complex(z), complex(w)
    if z == w:
        raise ValueError("leading forms need distinct points")
    return 0.5 * abs(z - w) ** 2


def localization_gap(z: complex, w: complex, radius: float = 1.0) -> GapDecomposition:
    """Exact two-term decomposition of k_halfdisc(radius) - k_halfplane.

    The gap is computed both as the sum of the closed-form terms and as the
    difference of the two distances; |sum - difference| is stored as the
    residual so the two routes certify each other.  For radius < 1 the points
    rescale by 1/radius (the half-plane distance is scale invariant).
    """
    dom = HalfDiscScaled(radius)
    _require_member(dom, z, "z")
    _require_member(dom, w, "w")
    zs, ws = complex(z) / radius, complex(w) / radius
    tb, ts = (float(t) for t in gap_terms_batch(zs, ws))
    k_local = float(halfdisc_distance_batch(zs, ws))
    k_global = float(halfplane_distance_batch(complex(z), complex(w)))
    gap = tb + ts
    residual = abs(gap - (k_local - k_global))
    return GapDecomposition(gap, tb, ts, residual, k_local, k_global)


def localization_gap_halfdisc(z: complex, w: complex) -> GapDecomposition:
    """The unit half-disc specialization of :func:`localization_gap`."""
    return localization_gap(z, w, 1.0)
