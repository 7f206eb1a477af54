"""Numeric Bergman kernel and metric on Reinhardt domains via monomial moments.

On a Reinhardt domain the monomials are orthogonal in the square-integrable
holomorphic space, so the kernel on the diagonal is the lacunary series
sum over alpha of |z^alpha|^2 / moment(alpha), with
moment(alpha) = integral over the domain of |z^alpha|^2 dV.  Moments come in
closed form for discs, polydiscs and balls, and from adaptive Gauss-Kronrod
quadrature on the radial profile for general Reinhardt ellipsoids.

The metric is the square root of the log-kernel complex Hessian quadratic
form, evaluated by second-order central differences in the X and iX
directions with step h.  This numeric route is deliberately independent of
the closed forms in :mod:`invlab.metrics`, so the two certify each other.
The sup-type extremal value (largest |f'(z)X| over unit-norm functions
vanishing at z) is recovered as metric times the square root of the kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iter_product
from typing import Mapping

import numpy as np

from .geometry import (
    Ball,
    Domain,
    MembershipError,
    PointLike,
    Polydisc,
    ReinhardtEllipsoid,
    UnitDisc,
    UnsupportedDomainError,
    VectorLike,
    as_components,
    as_coords,
    boundary_distance,
    contains,
    dimension,
)

DEFAULT_TRUNCATION = {1: 50, 2: 20}


def default_truncation(domain: Domain) -> int:
    """Desk-scale default truncation degree: 50 in dimension 1, 20 above."""
    return DEFAULT_TRUNCATION.get(dimension(domain), 20)


def _require_reinhardt(domain: Domain) -> None:
    if not isinstance(domain, (UnitDisc, Ball, Polydisc, ReinhardtEllipsoid)):
        raise UnsupportedDomainError(
            f"{type(domain).__name__} is not a Reinhardt catalog member"
        )


def _radial_factor(a: int, p: float, s: float) -> float:
    """integral_0^1 rho^(2a+1) (1 - rho^(2p))^s d rho by adaptive quadrature."""
    from scipy.integrate import quad

    val, _ = quad(
        lambda rho: rho ** (2 * a + 1) * (1.0 - rho ** (2 * p)) ** s,
        0.0,
        1.0,
        epsabs=0.0,
        epsrel=1e-12,
        limit=200,
    )
    return val


def monomial_moment(domain: Domain, alpha) -> float:
    """integral over the domain of |z^alpha|^2 dV, alpha a multi-index."""
    _require_reinhardt(domain)
    alpha = tuple(int(a) for a in np.atleast_1d(alpha))
    if len(alpha) != dimension(domain) or any(a < 0 for a in alpha):
        raise ValueError("multi-index must be nonnegative and match the dimension")
    if isinstance(domain, UnitDisc):
        return math.pi / (alpha[0] + 1)
    if isinstance(domain, Polydisc):
        out = 1.0
        for a, r in zip(alpha, domain.radii):
            out *= math.pi * r ** (2 * a + 2) / (a + 1)
        return out
    if isinstance(domain, Ball):
        n = domain.n
        out = math.pi**n
        for a in alpha:
            out *= math.factorial(a)
        return out / math.factorial(n + sum(alpha))
    # Reinhardt ellipsoid: peel coordinates off one radial integral at a time
    p = domain.exponents
    out = (2.0 * math.pi) ** len(alpha)
    for j, (a, pj) in enumerate(zip(alpha, p)):
        s = sum((alpha[k] + 1) / p[k] for k in range(j + 1, len(alpha)))
        out *= _radial_factor(a, pj, s)
    return out


@dataclass(frozen=True)
class MomentTable:
    """All monomial moments of a Reinhardt domain up to a total degree."""

    domain: Domain
    truncation_degree: int
    moments: Mapping[tuple[int, ...], float]
    # flat arrays for fast kernel evaluation, grouped by total degree
    alphas: np.ndarray = field(compare=False, repr=False)
    inv_moments: np.ndarray = field(compare=False, repr=False)
    degrees: np.ndarray = field(compare=False, repr=False)


def _multi_indices(n: int, max_degree: int):
    for alpha in iter_product(range(max_degree + 1), repeat=n):
        if sum(alpha) <= max_degree:
            yield alpha


@lru_cache(maxsize=64)
def moment_table(domain: Domain, truncation_degree: int) -> MomentTable:
    _require_reinhardt(domain)
    if truncation_degree < 0:
        raise ValueError("truncation degree must be >= 0")
    n = dimension(domain)
    alphas = sorted(_multi_indices(n, truncation_degree), key=lambda a: (sum(a), a))
    moments = {a: monomial_moment(domain, a) for a in alphas}
    if any(v <= 0 for v in moments.values()):
        raise RuntimeError("nonpositive moment; quadrature failed")
    arr = np.array(alphas, dtype=float)
    inv = np.array([1.0 / moments[a] for a in alphas])
    deg = arr.sum(axis=1).astype(int)
    return MomentTable(domain, truncation_degree, moments, arr, inv, deg)


@dataclass(frozen=True)
class KernelResult:
    """Diagonal Bergman kernel value with its square root and a tail estimate."""

    kernel_diag: float
    kernel_sqrt: float
    truncation_degree: int
    tail_estimate: float


def _kernel_value(table: MomentTable, coords: np.ndarray) -> tuple[float, float]:
    """(kernel diagonal, geometric tail estimate) at the given point."""
    r2 = np.abs(coords) ** 2
    terms = np.prod(r2[None, :] ** table.alphas, axis=1) * table.inv_moments
    degree_sums = np.bincount(table.degrees, weights=terms)
    kernel = float(np.sum(terms))
    tail = 0.0
    last = degree_sums[-5:]
    if len(last) >= 2 and last[-1] > 0.0:
        ratios = [
            last[i + 1] / last[i]
            for i in range(len(last) - 1)
            if last[i] > 0.0 and last[i + 1] > 0.0
        ]
        if ratios:
            r = max(ratios)
            tail = math.inf if r >= 1.0 else float(last[-1] * r / (1.0 - r))
    return kernel, tail


def bergman_kernel_diag(domain: Domain, z: PointLike, N: int) -> KernelResult:
    """Truncated kernel on the diagonal, sum over |alpha| <= N."""
    coords = as_coords(z)
    if not contains(domain, coords):
        raise MembershipError(f"point {coords.tolist()} is not in the domain")
    table = moment_table(domain, int(N))
    kernel, tail = _kernel_value(table, coords)
    return KernelResult(kernel, math.sqrt(kernel), int(N), tail)


def bergman_metric_numeric(
    domain: Domain, z: PointLike, X: VectorLike, N: int, h: float
) -> float:
    """Metric from the log-kernel Hessian by central differences with step h.

    Requires the base point to sit at least 2 h |X| inside the domain so all
    four shifted evaluation points are usable.  A nonpositive quadratic form
    signals a truncation degree too low for the point and raises.
    """
    coords = as_coords(z)
    vec = as_components(X)
    if len(coords) != len(vec):
        raise MembershipError("point and vector dimensions differ")
    if not contains(domain, coords):
        raise MembershipError(f"point {coords.tolist()} is not in the domain")
    reach = 2.0 * h * float(np.linalg.norm(vec))
    if boundary_distance(domain, coords) < reach:
        raise MembershipError(
            f"point is within {reach:g} of the boundary; decrease h"
        )
    table = moment_table(domain, int(N))

    def logk(p: np.ndarray) -> float:
        return math.log(_kernel_value(table, p)[0])

    center = logk(coords)
    quad_form = 0.0
    for unit in (1.0, 1j):
        step = h * unit * vec
        quad_form += logk(coords + step) + logk(coords - step) - 2.0 * center
    quad_form /= 4.0 * h * h
    if quad_form <= 0.0:
        raise ValueError(
            "log-kernel Hessian is not positive here; increase the truncation degree"
        )
    return math.sqrt(quad_form)


def bergman_derivative_sup(
    domain: Domain, z: PointLike, X: VectorLike, N: int, h: float
) -> float:
    """Largest |f'(z)X| over unit-norm square-integrable f with f(z) = 0.

    Computed as metric times the square root of the kernel, the identity that
    defines the metric in the first place.
    """
    beta = bergman_metric_numeric(domain, z, X, N, h)
    return beta * bergman_kernel_diag(domain, z, N).kernel_sqrt
