"""Model domains in C^n: membership, Euclidean boundary distance, ball caps.

The catalog is deliberately small.  Every member either carries closed-form
invariant metrics (disc, half-plane, scaled half-disc, ball, polydisc,
products) or supports the moment-based Bergman machinery (Reinhardt
ellipsoids).  Domains are open: boundary points are never members, and
operations that need an interior point reject non-members with
``MembershipError`` instead of returning limiting values, because every
quantity built on top of the catalog blows up at the boundary.

Points and tangent vectors are stored as tuples of Python complex numbers
(double precision throughout; no arbitrary precision is attempted).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np


class DimensionMismatchError(ValueError):
    """Point or vector dimension does not match the domain."""


class MembershipError(ValueError):
    """A point required to lie in the (open) domain does not."""


class UnsupportedDomainError(ValueError):
    """The requested operation has no honest implementation for this variant."""


class EmptyIntersectionError(ValueError):
    """A ball cap would have empty interior."""


@dataclass(frozen=True)
class ComplexPoint:
    """A point of C^n, n >= 1, with finite coordinates."""

    coords: tuple[complex, ...]

    def __post_init__(self):
        if len(self.coords) < 1:
            raise ValueError("a point needs at least one coordinate")
        coords = tuple(complex(c) for c in self.coords)
        for c in coords:
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError("coordinates must be finite")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def z(self) -> complex:
        """The single coordinate of a planar point."""
        if len(self.coords) != 1:
            raise DimensionMismatchError("not a planar point")
        return self.coords[0]

    def __complex__(self) -> complex:
        return self.z


@dataclass(frozen=True)
class TangentVector:
    """A tangent vector at a point of C^n; same length as the point."""

    components: tuple[complex, ...]

    def __post_init__(self):
        if len(self.components) < 1:
            raise ValueError("a vector needs at least one component")
        object.__setattr__(
            self, "components", tuple(complex(c) for c in self.components)
        )

    @property
    def dim(self) -> int:
        return len(self.components)


PointLike = Union[ComplexPoint, complex, float, int, Sequence[complex]]
VectorLike = Union[TangentVector, complex, float, int, Sequence[complex]]


def as_coords(z: PointLike) -> np.ndarray:
    """Coerce a point-like value to a 1-d complex array."""
    if isinstance(z, ComplexPoint):
        return np.asarray(z.coords, dtype=complex)
    if isinstance(z, (complex, float, int)):
        return np.array([complex(z)], dtype=complex)
    return np.asarray([complex(c) for c in z], dtype=complex)


def as_components(X: VectorLike) -> np.ndarray:
    if isinstance(X, TangentVector):
        return np.asarray(X.components, dtype=complex)
    if isinstance(X, (complex, float, int)):
        return np.array([complex(X)], dtype=complex)
    return np.asarray([complex(c) for c in X], dtype=complex)


def point(*coords: complex) -> ComplexPoint:
    return ComplexPoint(tuple(coords))


# --------------------------------------------------------------------------
# Domain descriptors
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class UnitDisc:
    """The open unit disc in C."""


@dataclass(frozen=True)
class HalfPlane:
    """The open upper half-plane Im z > 0."""


@dataclass(frozen=True)
class HalfDiscScaled:
    """Upper half-plane cut with the disc of radius r centered at 0, 0 < r <= 1."""

    radius: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.radius <= 1.0):
            raise ValueError("half-disc radius must lie in (0, 1]")


@dataclass(frozen=True)
class Ball:
    """The open Euclidean unit ball of C^n."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ball dimension must be >= 1")


@dataclass(frozen=True)
class Polydisc:
    """Product of discs of the given positive radii."""

    radii: tuple[float, ...]

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if len(radii) < 1 or any(r <= 0 for r in radii):
            raise ValueError("polydisc radii must be positive")
        object.__setattr__(self, "radii", radii)


@dataclass(frozen=True)
class Product:
    """Cartesian product of catalog domains; coordinates split factor by factor."""

    factors: tuple["Domain", ...]

    def __post_init__(self):
        if len(self.factors) < 1:
            raise ValueError("a product needs at least one factor")
        object.__setattr__(self, "factors", tuple(self.factors))


@dataclass(frozen=True)
class BallIntersection:
    """A base domain cut with an open Euclidean ball (a "cap")."""

    base: "Domain"
    center: ComplexPoint
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("cap radius must be positive")
        if self.center.dim != dimension(self.base):
            raise DimensionMismatchError("cap center has wrong dimension")
        if not _cap_nonempty(self.base, self.center, self.radius):
            raise EmptyIntersectionError("ball cap has empty interior")


@dataclass(frozen=True)
class ReinhardtEllipsoid:
    """The Reinhardt domain sum_j |z_j|^(2 p_j) < 1 with positive exponents."""

    exponents: tuple[float, ...]

    def __post_init__(self):
        exps = tuple(float(p) for p in self.exponents)
        if len(exps) < 1 or any(p <= 0 for p in exps):
            raise ValueError("ellipsoid exponents must be positive")
        object.__setattr__(self, "exponents", exps)


Domain = Union[
    UnitDisc,
    HalfPlane,
    HalfDiscScaled,
    Ball,
    Polydisc,
    Product,
    BallIntersection,
    ReinhardtEllipsoid,
]


def dimension(domain: Domain) -> int:
    if isinstance(domain, (UnitDisc, HalfPlane, HalfDiscScaled)):
        return 1
    if isinstance(domain, Ball):
        return domain.n
    if isinstance(domain, Polydisc):
        return len(domain.radii)
    if isinstance(domain, Product):
        return sum(dimension(f) for f in domain.factors)
    if isinstance(domain, BallIntersection):
        return dimension(domain.base)
    if isinstance(domain, ReinhardtEllipsoid):
        return len(domain.exponents)
    raise UnsupportedDomainError(f"unknown domain {domain!r}")


def split_coords(domain: Product, coords: np.ndarray) -> list[np.ndarray]:
    """Slice a coordinate array along the factors of a product domain."""
    out, k = [], 0
    for f in domain.factors:
        d = dimension(f)
        out.append(coords[k : k + d])
        k += d
    return out


def _check_dim(domain: Domain, coords: np.ndarray) -> None:
    if len(coords) != dimension(domain):
        raise DimensionMismatchError(
            f"point has dimension {len(coords)}, domain has {dimension(domain)}"
        )


def contains(domain: Domain, z: PointLike) -> bool:
    """True iff z lies in the open domain; boundary points are excluded."""
    coords = as_coords(z)
    _check_dim(domain, coords)
    if isinstance(domain, UnitDisc):
        return abs(coords[0]) < 1.0
    if isinstance(domain, HalfPlane):
        return coords[0].imag > 0.0
    if isinstance(domain, HalfDiscScaled):
        return coords[0].imag > 0.0 and abs(coords[0]) < domain.radius
    if isinstance(domain, Ball):
        return float(np.linalg.norm(coords)) < 1.0
    if isinstance(domain, Polydisc):
        return all(abs(c) < r for c, r in zip(coords, domain.radii))
    if isinstance(domain, Product):
        return all(
            contains(f, part)
            for f, part in zip(domain.factors, split_coords(domain, coords))
        )
    if isinstance(domain, BallIntersection):
        cap = np.linalg.norm(coords - as_coords(domain.center)) < domain.radius
        return bool(cap) and contains(domain.base, coords)
    if isinstance(domain, ReinhardtEllipsoid):
        return float(np.sum(np.abs(coords) ** (2 * np.asarray(domain.exponents)))) < 1.0
    raise UnsupportedDomainError(f"unknown domain {domain!r}")


def boundary_distance(domain: Domain, z: PointLike) -> float:
    """Euclidean distance from an interior point to the complement of the domain."""
    coords = as_coords(z)
    _check_dim(domain, coords)
    if not contains(domain, coords):
        raise MembershipError(f"point {coords.tolist()} is not in the domain")
    return _delta(domain, coords)


def _delta(domain: Domain, coords: np.ndarray) -> float:
    if isinstance(domain, UnitDisc):
        return 1.0 - abs(coords[0])
    if isinstance(domain, HalfPlane):
        return coords[0].imag
    if isinstance(domain, HalfDiscScaled):
        return min(coords[0].imag, domain.radius - abs(coords[0]))
    if isinstance(domain, Ball):
        return 1.0 - float(np.linalg.norm(coords))
    if isinstance(domain, Polydisc):
        return min(r - abs(c) for c, r in zip(coords, domain.radii))
    if isinstance(domain, Product):
        # complement of a product is the union of "bad slab" cylinders
        return min(
            _delta(f, part)
            for f, part in zip(domain.factors, split_coords(domain, coords))
        )
    if isinstance(domain, BallIntersection):
        to_sphere = domain.radius - float(
            np.linalg.norm(coords - as_coords(domain.center))
        )
        # exact for the convex-with-convex intersections in the catalog
        return min(_delta(domain.base, coords), to_sphere)
    if isinstance(domain, ReinhardtEllipsoid):
        return _ellipsoid_delta(domain, coords)
    raise UnsupportedDomainError(f"unknown domain {domain!r}")


def _ellipsoid_delta(domain: ReinhardtEllipsoid, coords: np.ndarray) -> float:
    """Distance to the complement of a Reinhardt ellipsoid.

    Rotation invariance in each coordinate puts the nearest boundary point at
    the same phases as z, so the problem drops to the moduli orthant:
    minimize |x - s| over s >= 0 with sum s_j^(2 p_j) = 1.
    """
    p = np.asarray(domain.exponents, dtype=float)
    x = np.abs(coords)
    if len(p) == 1:
        return 1.0 - x[0]  # any single-exponent ellipsoid is the unit disc
    from scipy.optimize import minimize

    def level(s):
        return float(np.sum(s ** (2 * p)))

    # radial start: scale x out to the surface (x = 0 starts from a corner)
    if np.all(x < 1e-14):
        s0 = np.zeros_like(x)
        s0[0] = 1.0
    else:
        from scipy.optimize import brentq

        g = lambda t: level(np.maximum(x, 1e-300) / t) - 1.0
        t0 = brentq(g, 1e-12, 1.0, xtol=1e-15)
        s0 = x / t0
    starts = [s0]
    for j in range(len(x)):  # corners, in case the radial start is a poor basin
        e = np.zeros_like(x)
        e[j] = 1.0
        starts.append(e)
    best = math.inf
    for s in starts:
        res = minimize(
            lambda s_: float(np.sum((x - s_) ** 2)),
            s,
            method="SLSQP",
            bounds=[(0.0, None)] * len(x),
            constraints=[{"type": "eq", "fun": lambda s_: level(s_) - 1.0}],
            options={"ftol": 1e-14, "maxiter": 200},
        )
        if res.success:
            best = min(best, math.sqrt(max(res.fun, 0.0)))
    if not math.isfinite(best):
        raise RuntimeError("ellipsoid boundary projection failed to converge")
    return best


def _distance_to_closure(domain: Domain, coords: np.ndarray) -> float:
    """Euclidean distance from a point to the closed domain (0 if inside)."""
    if contains(domain, coords):
        return 0.0
    if isinstance(domain, HalfPlane):
        return max(0.0, -coords[0].imag)
    if isinstance(domain, UnitDisc):
        return max(0.0, abs(coords[0]) - 1.0)
    if isinstance(domain, Ball):
        return max(0.0, float(np.linalg.norm(coords)) - 1.0)
    if isinstance(domain, Polydisc):
        gaps = [max(0.0, abs(c) - r) for c, r in zip(coords, domain.radii)]
        return float(np.hypot.reduce(gaps)) if len(gaps) > 1 else gaps[0]
    if isinstance(domain, HalfDiscScaled):
        w = complex(coords[0].real, max(coords[0].imag, 0.0))
        if abs(w) > domain.radius:
            w = w * (domain.radius / abs(w))
        return abs(coords[0] - w)
    raise UnsupportedDomainError(
        "cannot verify cap nonemptiness against this base; place the center inside"
    )


def _cap_nonempty(base: Domain, center: ComplexPoint, radius: float) -> bool:
    coords = as_coords(center)
    if contains(base, coords):
        return True
    return _distance_to_closure(base, coords) < radius


def contains_batch(domain: Domain, Z: np.ndarray) -> np.ndarray:
    """Vectorized membership for a batch of points, shape (m, n) -> (m,) bools."""
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    if isinstance(domain, UnitDisc):
        return np.abs(Z[:, 0]) < 1.0
    if isinstance(domain, HalfPlane):
        return Z[:, 0].imag > 0.0
    if isinstance(domain, HalfDiscScaled):
        return (Z[:, 0].imag > 0.0) & (np.abs(Z[:, 0]) < domain.radius)
    if isinstance(domain, Ball):
        return np.linalg.norm(Z, axis=1) < 1.0
    if isinstance(domain, Polydisc):
        return np.all(np.abs(Z) < np.asarray(domain.radii), axis=1)
    if isinstance(domain, Product):
        ok = np.ones(Z.shape[0], dtype=bool)
        k = 0
        for f in domain.factors:
            d = dimension(f)
            ok &= contains_batch(f, Z[:, k : k + d])
            k += d
        return ok
    if isinstance(domain, BallIntersection):
        c = as_coords(domain.center)
        cap = np.linalg.norm(Z - c, axis=1) < domain.radius
        return cap & contains_batch(domain.base, Z)
    if isinstance(domain, ReinhardtEllipsoid):
        p = np.asarray(domain.exponents)
        return np.sum(np.abs(Z) ** (2 * p), axis=1) < 1.0
    raise UnsupportedDomainError(f"unknown domain {domain!r}")


def intersect_with_ball(
    domain: Domain, center: PointLike, radius: float
) -> Domain:
    """Cut a domain with an open ball; the half-plane cut at 0 normalizes to a half-disc."""
    c = ComplexPoint(tuple(as_coords(center)))
    if radius <= 0:
        raise ValueError("cap radius must be positive")
    if (
        isinstance(domain, HalfPlane)
        and c.coords == (0j,)
        and 0.0 < radius <= 1.0
    ):
        return HalfDiscScaled(radius)
    return BallIntersection(domain, c, radius)
