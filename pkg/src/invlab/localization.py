"""Admissible weights, bound-shape evaluators, and empirical sharpness sweeps.

A weight f: (0, inf) -> (0, inf) is admissible when it is increasing,
unbounded, x -> f(x)/x is decreasing, and integral_0^1 f(x)/x dx converges.
``check_admissible`` tests the four conditions on a geometric grid (the first
two on an upward extension of the grid, the integral by decay of per-octave
shell sums near zero), so its verdicts are grid heuristics, exact for the
power-law weights used throughout.

The bound evaluators are plain formula shapes with free constants; none of
the constants is asserted, they are estimated empirically by
``empirical_constant`` and reported.  ``sharpness_sweep`` produces the tables
showing that the two-term gap bound |z-w| (|z-w|/2 + min(Im z, Im w)) is
tight on the imaginary axis and that neither additive term can be dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .distances import gap_terms_batch

WeightLike = Callable[[float], float]


@dataclass(frozen=True)
class AdmissibleWeight:
    """A weight with a named form; ``power`` pins c > 0 and 0 < alpha <= 1."""

    form: str  # power | linear | tabulated
    c: float = 1.0
    alpha: float = 1.0
    grid: Optional[tuple[tuple[float, ...], tuple[float, ...]]] = None

    def __post_init__(self):
        if self.form == "power":
            if self.c <= 0 or not (0.0 < self.alpha <= 1.0):
                raise ValueError("power weight needs c > 0 and alpha in (0, 1]")
        elif self.form == "linear":
            if self.c <= 0:
                raise ValueError("linear weight needs c > 0")
        elif self.form == "tabulated":
            if self.grid is None or len(self.grid[0]) < 2:
                raise ValueError("tabulated weight needs a grid of >= 2 points")
            xs, ys = self.grid
            if any(x <= 0 for x in xs) or any(y <= 0 for y in ys):
                raise ValueError("tabulated weight must be positive")
            if list(xs) != sorted(xs):
                raise ValueError("tabulated abscissae must be increasing")
        else:
            raise ValueError(f"unknown weight form {self.form!r}")

    def __call__(self, x: float) -> float:
        if x <= 0:
            raise ValueError("weights are defined on (0, inf)")
        if self.form == "power":
            return self.c * x**self.alpha
        if self.form == "linear":
            return self.c * x
        xs, ys = self.grid
        # log-log interpolation, constant-slope extrapolation past the ends
        lx = math.log(x)
        return math.exp(
            float(np.interp(lx, np.log(xs), np.log(ys)))
            if xs[0] <= x <= xs[-1]
            else self._extrapolate(lx)
        )

    def _extrapolate(self, lx: float) -> float:
        lxs = np.log(self.grid[0])
        lys = np.log(self.grid[1])
        if lx < lxs[0]:
            slope = (lys[1] - lys[0]) / (lxs[1] - lxs[0])
            return lys[0] + slope * (lx - lxs[0])
        slope = (lys[-1] - lys[-2]) / (lxs[-1] - lxs[-2])
        return lys[-1] + slope * (lx - lxs[-1])


def power_weight(c: float = 1.0, alpha: float = 0.5) -> AdmissibleWeight:
    return AdmissibleWeight("power", c=c, alpha=alpha)


def linear_weight(c: float = 1.0) -> AdmissibleWeight:
    return AdmissibleWeight("linear", c=c)


def tabulated_weight(xs: Sequence[float], ys: Sequence[float]) -> AdmissibleWeight:
    return AdmissibleWeight("tabulated", grid=(tuple(xs), tuple(ys)))


@dataclass(frozen=True)
class GeometricGrid:
    """Geometric grid spec for the admissibility checks."""

    lo: float = 1e-8
    hi: float = 1.0
    points_per_decade: int = 64
    growth_doublings: int = 40  # upward extension used by the unboundedness check

    def __post_init__(self):
        if not (0.0 < self.lo < self.hi):
            raise ValueError("need 0 < lo < hi")
        if self.points_per_decade < 2 or self.growth_doublings < 1:
            raise ValueError("grid must be nontrivial")

    def points(self) -> np.ndarray:
        decades = math.log10(self.hi / self.lo)
        count = max(2, int(round(decades * self.points_per_decade)) + 1)
        return np.geomspace(self.lo, self.hi, count)

    def extension(self) -> np.ndarray:
        return self.hi * 2.0 ** np.arange(1, self.growth_doublings + 1)


VIOLATION_NOT_INCREASING = "not increasing"
VIOLATION_NOT_UNBOUNDED = "not unbounded"
VIOLATION_RATIO_NOT_DECREASING = "f(x)/x not decreasing"
VIOLATION_INTEGRAL_DIVERGES = "integral of f(x)/x near 0 diverges"

_SLACK = 1e-12


def check_admissible(
    f: WeightLike, grid: GeometricGrid = GeometricGrid()
) -> list[str]:
    """Empty list iff all four admissibility conditions hold on the grid."""
    xs = grid.points()
    ext = grid.extension()
    vals = np.array([f(float(x)) for x in xs])
    ext_vals = np.array([f(float(x)) for x in ext])
    violations = []
    joined = np.concatenate([vals, ext_vals])
    if np.any(joined[1:] < joined[:-1] * (1.0 - _SLACK)):
        violations.append(VIOLATION_NOT_INCREASING)
    if ext_vals[-1] < 10.0 * max(vals[-1], 1e-300):
        violations.append(VIOLATION_NOT_UNBOUNDED)
    ratio = vals / xs
    if np.any(ratio[1:] > ratio[:-1] * (1.0 + _SLACK)):
        violations.append(VIOLATION_RATIO_NOT_DECREASING)
    # per-octave trapezoid shells of f(x)/x must decay toward zero
    octaves = int(math.floor(math.log2(grid.hi / grid.lo)))
    shells = []
    for k in range(octaves):
        a = grid.hi / 2.0 ** (k + 1)
        b = grid.hi / 2.0**k
        t = np.geomspace(a, b, 9)
        y = np.array([f(float(x)) for x in t]) / t
        shells.append(float(0.5 * np.sum((y[1:] + y[:-1]) * np.diff(t))))
    tail = shells[-6:]  # the six octaves closest to zero, upper one first
    if len(tail) >= 2:
        ratios = [
            tail[i + 1] / tail[i] for i in range(len(tail) - 1) if tail[i] > 0
        ]
        if ratios and min(ratios) > 0.995:
            violations.append(VIOLATION_INTEGRAL_DIVERGES)
    return violations


def weight_integral(f: WeightLike, T: float) -> float:
    """integral_0^T f(x)/x dx; closed form for power and linear weights."""
    if T < 0:
        raise ValueError("T must be nonnegative")
    if T == 0:
        return 0.0
    if isinstance(f, AdmissibleWeight):
        if f.form == "power":
            return f.c * T**f.alpha / f.alpha
        if f.form == "linear":
            return f.c * T
    from scipy.integrate import quad

    # substitute x = exp(u): the integrand f(exp u) is smooth down to the cutoff
    cutoff = T * 1e-10
    body, _ = quad(
        lambda u: f(math.exp(u)),
        math.log(cutoff),
        math.log(T),
        epsabs=0.0,
        epsrel=1e-11,
        limit=200,
    )
    # fit a local power to finish the integral below the cutoff
    f1, f2 = f(cutoff), f(2.0 * cutoff)
    alpha_hat = math.log(f2 / f1) / math.log(2.0)
    if alpha_hat <= 1e-6:
        raise ValueError("integral of f(x)/x does not converge near zero")
    return body + f1 / alpha_hat


@dataclass(frozen=True)
class BoundParams:
    """Free constants of the bound shapes; m is the contact-order exponent."""

    c1: float = 1.0
    c2: float = 1.0
    c3: float = 1.0
    C: float = 1.0
    m: int = 1

    def __post_init__(self):
        if min(self.c1, self.c2, self.c3, self.C) <= 0 or self.m < 1:
            raise ValueError("constants must be positive with m >= 1")


def integrated_weight_bound(
    f: WeightLike, params: BoundParams, z: complex, w: complex
) -> float:
    """c1 * integral_0^(c2 |z-w|^(1/2m)) f(x)/x dx."""
    sep = abs(complex(z) - complex(w))
    if sep == 0.0:
        return 0.0
    return params.c1 * weight_integral(f, params.c2 * sep ** (1.0 / (2 * params.m)))


def ratio_weight_bound(
    f: WeightLike, params: BoundParams, z: complex, w: complex, delta_z: float
) -> float:
    """1 + f(c3 (delta_z + |z-w|^(1/2m)))."""
    sep = abs(complex(z) - complex(w))
    arg = params.c3 * (delta_z + sep ** (1.0 / (2 * params.m)))
    if arg == 0.0:
        return 1.0
    return 1.0 + f(arg)


def refined_excursion_bound(
    z: complex, w: complex, delta_z: float, delta_w: float, C: float, m: int
) -> float:
    """C (|z-w| / (|z-w|^(1/2) + delta_z^(1/2) + delta_w^(1/2)))^(1/m)."""
    if min(delta_z, delta_w) < 0:
        raise ValueError("boundary distances must be nonnegative")
    sep = abs(complex(z) - complex(w))
    if sep == 0.0:
        return 0.0
    return C * (sep / (math.sqrt(sep) + math.sqrt(delta_z) + math.sqrt(delta_w))) ** (
        1.0 / m
    )


def planar_gap_bound(
    C: float, z: complex, w: complex, delta_z: float, delta_w: float
) -> float:
    """C |z-w| (|z-w| + delta_z^(1/2) delta_w^(1/2)), the sharp planar shape."""
    sep = abs(complex(z) - complex(w))
    return C * sep * (sep + math.sqrt(delta_z * delta_w))


def near_boundary_upper_bound(
    z: complex, w: complex, delta_z: float, delta_w: float, C: float
) -> float:
    """log(1 + C |z-w| / (delta_z delta_w)^(1/2)), an upper shape for the distance."""
    if min(delta_z, delta_w) <= 0:
        raise ValueError("boundary distances must be positive")
    sep = abs(complex(z) - complex(w))
    return _scaled_log_bound(1, C, sep, math.sqrt(delta_z * delta_w))


def near_boundary_lower_bound(
    z: complex, w: complex, delta_z: float, C: float, m: int = 1
) -> float:
    """m log(1 + C |z-w| / delta_z^(1/2m)), the companion lower shape."""
    if delta_z <= 0:
        raise ValueError("boundary distance must be positive")
    sep = abs(complex(z) - complex(w))
    return _scaled_log_bound(m, C, sep, delta_z ** (1.0 / (2 * m)))


def _scaled_log_bound(m: int, C: float, sep: float, denom: float) -> float:
    return m * math.log1p(C * sep / denom)


@dataclass(frozen=True)
class BoundReport:
    """Empirical max of lhs/rhs over a pair family, with its witness."""

    max_ratio: float
    argmax_pair: tuple[complex, complex]
    sample_count: int
    fitted_exponent: Optional[float] = None


def empirical_constant(
    pairs: Sequence[tuple[complex, complex]],
    lhs: Callable[[complex, complex], float],
    rhs_shape: Callable[[complex, complex], float],
) -> BoundReport:
    """Largest lhs/rhs over the pairs (coincident pairs are skipped)."""
    if len(pairs) == 0:
        raise ValueError("empty pair list")
    best, witness, used = -math.inf, None, 0
    for z, w in pairs:
        if z == w:
            continue
        used += 1
        ratio = lhs(z, w) / rhs_shape(z, w)
        if ratio > best:
            best, witness = ratio, (z, w)
    if witness is None:
        raise ValueError("all pairs were coincident")
    return BoundReport(best, witness, used)


def fit_exponent(samples: Sequence[tuple[float, float]]) -> float:
    """Least-squares slope of log(value) against log(scale)."""
    if len(samples) < 3:
        raise ValueError("need at least three samples")
    h = np.array([s[0] for s in samples], dtype=float)
    g = np.array([s[1] for s in samples], dtype=float)
    if np.any(h <= 0) or np.any(g <= 0):
        raise ValueError("samples must be positive")
    slope, _ = np.polyfit(np.log(h), np.log(g), 1)
    return float(slope)


# --------------------------------------------------------------------------
# sharpness sweeps on the imaginary axis
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    family: str
    t: float
    z: complex
    w: complex
    gap: float
    bound: float
    ratio: float


def two_term_gap_bound(z: complex, w: complex) -> float:
    """|z-w| (|z-w|/2 + min(Im z, Im w)), the two-term gap shape."""
    sep = abs(z - w)
    return sep * (0.5 * sep + min(z.imag, w.imag))


def _gap(z, w) -> float:
    tb, ts = gap_terms_batch(np.asarray([z]), np.asarray([w]))
    return float(tb[0] + ts[0])


def sharpness_sweep(t_values: Sequence[float]) -> list[SweepRow]:
    """Gap-versus-bound rows for three imaginary-axis families.

    * ``balanced``: w = i t / 2, ratio against the full two-term bound; the
      ratio tends to 1 as t -> 0, so the bound is tight with constant 1.
    * ``drop-boundary``: w = i t (1 - 1e-6), nearly coincident points, ratio
      against the separation-only bound |z-w|^2 / 2; the ratio blows up, so
      the min(Im) term cannot be removed.
    * ``drop-separation``: w = i t^2, one point much deeper toward the
      boundary, ratio against the min(Im)-only bound |z-w| min(Im); the ratio
      blows up, so the |z-w|/2 term cannot be removed.
    """
    rows: list[SweepRow] = []
    for t in t_values:
        t = float(t)
        if not (0.0 < t <= 0.1):
            raise ValueError("sweep parameters must lie in (0, 0.1]")
        z = 1j * t
        cases = (
            ("balanced", 0.5j * t, lambda zz, ww: two_term_gap_bound(zz, ww)),
            (
                "drop-boundary",
                1j * t * (1.0 - 1e-6),
                lambda zz, ww: abs(zz - ww) * 0.5 * abs(zz - ww),
            ),
            (
                "drop-separation",
                1j * t * t,
                lambda zz, ww: abs(zz - ww) * min(zz.imag, ww.imag),
            ),
        )
        for family, w, bound_fn in cases:
            gap = _gap(z, w)
            bound = bound_fn(z, w)
            rows.append(SweepRow(family, t, z, w, gap, bound, gap / bound))
    return rows
