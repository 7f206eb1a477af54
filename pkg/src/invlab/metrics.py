"""Closed-form infinitesimal metrics on the catalog domains.

A ``FinslerDensity`` packages a nonnegative, absolutely homogeneous function
of (point, tangent vector).  Three families are provided in closed form:

* the Kobayashi density (the hyperbolic density on planar members, the
  standard ball and polydisc formulas, max over factors on products),
* the Bergman metric on disc, ball and polydisc,
* the normalized Bergman metric, the Bergman metric divided by sqrt(n + 1),
  which coincides with the Kobayashi density on the disc and the ball.

Densities evaluate in batch on (m, n) complex arrays for the geodesic solver;
points outside the domain map to +inf, which arithmetic then propagates
(lengths through an outside point are +inf).  The scalar entry points instead
validate membership and raise.

The ball Kobayashi density is computed by differentiating the automorphism
that moves the base point to the origin, where the density of a vector is its
norm; this avoids carrying a separate formula with its own typo risk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import conformal
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
    VectorLike,
    as_components,
    as_coords,
    contains,
    contains_batch,
    dimension,
)

INF = math.inf


@dataclass(frozen=True)
class FinslerDensity:
    """A point-and-vector density with a vectorized evaluation core."""

    source: str
    domain: Optional[Domain]
    core: Callable[[np.ndarray, np.ndarray], np.ndarray] = field(compare=False)

    def evaluate(self, z: PointLike, X: VectorLike) -> float:
        """Scalar evaluation with membership validation."""
        zc = as_coords(z)
        Xc = as_components(X)
        if len(zc) != len(Xc):
            raise MembershipError("point and vector dimensions differ")
        if self.domain is not None and not contains(self.domain, zc):
            raise MembershipError(f"point {zc.tolist()} is not in the domain")
        return float(self.core(zc[None, :], Xc[None, :])[0])

    def evaluate_batch(self, Z: np.ndarray, X: np.ndarray) -> np.ndarray:
        """Unvalidated batch evaluation; outside points give +inf."""
        return self.core(np.atleast_2d(Z), np.atleast_2d(X))

    def __call__(self, z: PointLike, X: VectorLike) -> float:
        return self.evaluate(z, X)


def _masked(vals: np.ndarray, inside: np.ndarray) -> np.ndarray:
    vals = np.asarray(vals, dtype=float)
    return np.where(inside, vals, INF)


def _kobayashi_core(domain: Domain) -> Callable:
    if isinstance(domain, UnitDisc):

        def core(Z, X):
            r2 = np.abs(Z[:, 0]) ** 2
            with np.errstate(divide="ignore", invalid="ignore"):
                vals = np.abs(X[:, 0]) / (1.0 - r2)
            return _masked(vals, r2 < 1.0)

        return core
    if isinstance(domain, HalfPlane):

        def core(Z, X):
            y = Z[:, 0].imag
            with np.errstate(divide="ignore", invalid="ignore"):
                vals = np.abs(X[:, 0]) / (2.0 * y)
            return _masked(vals, y > 0.0)

        return core
    if isinstance(domain, HalfDiscScaled):
        r = domain.radius
        f = conformal.HalfDiscToHalfPlane()

        def core(Z, X):
            zeta = Z[:, 0] / r
            inside = (zeta.imag > 0.0) & (np.abs(zeta) < 1.0)
            zsafe = np.where(inside, zeta, 0.5j)
            w = conformal._apply(f, zsafe)
            d = conformal._derivative(f, zsafe) * (X[:, 0] / r)
            vals = np.abs(d) / (2.0 * w.imag)
            return _masked(vals, inside)

        return core
    if isinstance(domain, Ball):

        def core(Z, X):
            nz2 = np.sum(np.abs(Z) ** 2, axis=1)
            inside = nz2 < 1.0
            s2 = np.where(inside, 1.0 - nz2, np.nan)
            ip = np.sum(X * np.conj(Z), axis=1)
            nx2 = np.sum(np.abs(X) ** 2, axis=1)
            # split X along and across z, push through the automorphism derivative
            with np.errstate(divide="ignore", invalid="ignore"):
                p2 = np.where(nz2 > 0.0, np.abs(ip) ** 2 / np.where(nz2 > 0, nz2, 1.0), 0.0)
                q2 = np.maximum(nx2 - p2, 0.0)
                vals = np.sqrt(p2 + s2 * q2) / s2
            return _masked(vals, inside)

        return core
    if isinstance(domain, Polydisc):
        radii = np.asarray(domain.radii)

        def core(Z, X):
            inside = np.all(np.abs(Z) < radii, axis=1)
            with np.errstate(divide="ignore", invalid="ignore"):
                per = radii * np.abs(X) / (radii**2 - np.abs(Z) ** 2)
                vals = np.max(per, axis=1)
            return _masked(vals, inside)

        return core
    if isinstance(domain, Product):
        slices, k = [], 0
        cores = []
        for f in domain.factors:
            d = dimension(f)
            slices.append(slice(k, k + d))
            cores.append(_kobayashi_core(f))
            k += d

        def core(Z, X):
            vals = [c(Z[:, s], X[:, s]) for c, s in zip(cores, slices)]
            return np.max(np.stack(vals), axis=0)

        return core
    raise UnsupportedDomainError(
        f"no closed-form Kobayashi density for {type(domain).__name__}"
    )


def kobayashi_density(domain: Domain) -> FinslerDensity:
    return FinslerDensity("kobayashi", domain, _kobayashi_core(domain))


def _bergman_core(domain: Domain) -> Callable:
    if isinstance(domain, UnitDisc):

        def core(Z, X):
            r2 = np.abs(Z[:, 0]) ** 2
            with np.errstate(divide="ignore", invalid="ignore"):
                vals = math.sqrt(2.0) * np.abs(X[:, 0]) / (1.0 - r2)
            return _masked(vals, r2 < 1.0)

        return core
    if isinstance(domain, Ball):
        kob = _kobayashi_core(domain)
        scale = math.sqrt(domain.n + 1)

        def core(Z, X):
            return scale * kob(Z, X)

        return core
    if isinstance(domain, Polydisc):
        radii = np.asarray(domain.radii)

        def core(Z, X):
            inside = np.all(np.abs(Z) < radii, axis=1)
            with np.errstate(divide="ignore", invalid="ignore"):
                per = 2.0 * (radii * np.abs(X)) ** 2 / (radii**2 - np.abs(Z) ** 2) ** 2
                vals = np.sqrt(np.sum(per, axis=1))
            return _masked(vals, inside)

        return core
    raise UnsupportedDomainError(
        f"no closed-form Bergman metric for {type(domain).__name__};"
        " use the numeric moment-based route for Reinhardt domains"
    )


def bergman_density(domain: Domain) -> FinslerDensity:
    return FinslerDensity("bergman", domain, _bergman_core(domain))


def normalized_bergman_density(domain: Domain) -> FinslerDensity:
    core = _bergman_core(domain)
    scale = 1.0 / math.sqrt(dimension(domain) + 1)

    def scaled(Z, X):
        return scale * core(Z, X)

    return FinslerDensity("normalized_bergman", domain, scaled)


def pullback(m: conformal.MapDescriptor, density: FinslerDensity) -> FinslerDensity:
    """Pull a planar density back through a conformal map: t(z; X) = t(f(z); f'(z) X)."""
    src = conformal.source_domain(m)

    def core(Z, X):
        z = Z[:, 0]
        if src is not None:
            inside = contains_batch(src, Z)
            zsafe = np.where(inside, z, _anchor(src))
        else:
            inside = np.ones(len(z), dtype=bool)
            zsafe = z
        w = conformal._apply(m, zsafe)
        d = conformal._derivative(m, zsafe) * X[:, 0]
        vals = density.core(w[:, None], d[:, None])
        return _masked(vals, inside)

    return FinslerDensity("pullback", src, core)


def _anchor(domain: Domain) -> complex:
    # any interior point, used to keep masked-out batch entries finite
    if isinstance(domain, HalfPlane):
        return 1j
    if isinstance(domain, HalfDiscScaled):
        return 0.5j * domain.radius
    return 0j


def custom_density(
    fn: Callable[[np.ndarray, np.ndarray], float], domain: Optional[Domain] = None
) -> FinslerDensity:
    """Wrap a scalar (coords, components) -> value function; rows are looped."""

    def core(Z, X):
        return np.array([float(fn(z, x)) for z, x in zip(Z, X)])

    return FinslerDensity("custom", domain, core)


# --------------------------------------------------------------------------
# scalar convenience entry points
# --------------------------------------------------------------------------

def kobayashi_royden_density(domain: Domain, z: PointLike, X: VectorLike) -> float:
    return kobayashi_density(domain).evaluate(z, X)


def bergman_metric(domain: Domain, z: PointLike, X: VectorLike) -> float:
    return bergman_density(domain).evaluate(z, X)


def normalized_bergman(domain: Domain, z: PointLike, X: VectorLike) -> float:
    return normalized_bergman_density(domain).evaluate(z, X)


def pullback_density(
    m: conformal.MapDescriptor,
    density: FinslerDensity,
    z: PointLike,
    X: VectorLike,
) -> float:
    return pullback(m, density).evaluate(z, X)


def squeezing_sandwich(
    domain: Domain, z: PointLike, X: VectorLike, sigma: float
) -> tuple[float, float, float]:
    """Ratio (normalized Bergman / Kobayashi) with its squeezing bounds.

    For a user-supplied squeezing constant sigma in (0, 1], returns
    (ratio, sigma^(n+1), sigma^-(n+1)); the ratio must land between the two.
    """
    if not (0.0 < sigma <= 1.0):
        raise ValueError("squeezing constant must lie in (0, 1]")
    n = dimension(domain)
    ratio = normalized_bergman(domain, z, X) / kobayashi_royden_density(domain, z, X)
    return ratio, sigma ** (n + 1), sigma ** (-(n + 1))
