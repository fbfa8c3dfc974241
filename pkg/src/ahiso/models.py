"""Rotationally symmetric metric models in area-radius form.

A model is the warped product g = f(s)^{-1} ds^2 + s^2 sigma with sigma
the round unit 2-sphere and

    f(s) = 1 + s^2 - 2 m / s + sum_{k >= 2} c_k s^{-k}.

Hyperbolic space is f = 1 + s^2.  A positive mass adds the -2m/s well
and a core radius (the largest positive root of f); the metric lives on
s > core_radius.  Perturbation coefficients c_k deform the family while
keeping the 1 + s^2 leading behaviour.

Several quantities here are written in terms of the deficit

    d(s) = f(s) - (1 + s^2),

which is evaluated term by term.  Forming f - (1 + s^2) by subtraction
loses all significant digits once s is large, and the deficit is exactly
the piece that curvature excesses and mass integrands depend on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .numerics import QuadResult, find_root, integrate

__all__ = [
    "RadialMetric",
    "ValidationReport",
    "make_hyperbolic",
    "make_ads_schwarzschild",
    "make_perturbed",
    "scalar_curvature",
    "scalar_curvature_excess",
    "coordinate_gap",
    "rho_from_s",
    "s_from_rho",
    "validate_ah",
]


def _as_float_array(s):
    arr = np.asarray(s, dtype=float)
    return arr, arr.ndim == 0


@dataclass(frozen=True)
class RadialMetric:
    """One member of the radial model family.

    Attributes
    ----------
    mass : float
        Coefficient m of the -2m/s term.  Nonnegative.
    coeffs : tuple of float
        Perturbation coefficients (c_2, c_3, ...), possibly empty.
    core_radius : float
        Largest positive root of f, or 0 when f > 0 on all of (0, inf).
        Computed by the constructors; do not pass by hand.
    """

    mass: float
    coeffs: tuple[float, ...] = ()
    core_radius: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.mass) or self.mass < 0.0:
            raise ValueError(f"mass must be finite and >= 0, got {self.mass!r}")
        if any(not math.isfinite(c) for c in self.coeffs):
            raise ValueError("perturbation coefficients must be finite")
        if not math.isfinite(self.core_radius) or self.core_radius < 0.0:
            raise ValueError(
                f"core_radius must be finite and >= 0, got {self.core_radius!r}"
            )
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    # -- profile -------------------------------------------------------

    def deficit(self, s):
        """f(s) - (1 + s^2), evaluated without cancellation."""
        arr, scalar = _as_float_array(s)
        out = np.zeros_like(arr)
        if self.mass:
            out = out - 2.0 * self.mass / arr
        for k, c in enumerate(self.coeffs, start=2):
            if c:
                out = out + c * arr ** (-k)
        return float(out) if scalar else out

    def deficit_prime(self, s):
        """d/ds of the deficit."""
        arr, scalar = _as_float_array(s)
        out = np.zeros_like(arr)
        if self.mass:
            out = out + 2.0 * self.mass / arr ** 2
        for k, c in enumerate(self.coeffs, start=2):
            if c:
                out = out - k * c * arr ** (-k - 1)
        return float(out) if scalar else out

    def f(self, s):
        arr, scalar = _as_float_array(s)
        out = 1.0 + arr * arr + self.deficit(arr)
        return float(out) if scalar else out

    def f_prime(self, s):
        arr, scalar = _as_float_array(s)
        out = 2.0 * arr + self.deficit_prime(arr)
        return float(out) if scalar else out

    def core_quotient(self, delta):
        """f(core_radius + delta) / delta for delta > 0, without cancellation.

        Only defined for models with core_radius > 0, where f has a simple
        root at the core.  The quotient extends smoothly to delta = 0 with
        value f'(core_radius), which is what makes integrands in the
        substitution s = core + w^2 regular.
        """
        if self.core_radius <= 0.0:
            raise ValueError("core_quotient requires a positive core_radius")
        arr, scalar = _as_float_array(delta)
        sh = self.core_radius
        b = sh + arr
        # (f(b) - f(sh)) / delta with f(sh) = 0, expanded term by term.
        out = (2.0 * sh + arr) + 2.0 * self.mass / (b * sh)
        for k, c in enumerate(self.coeffs, start=2):
            if c:
                ladder = np.zeros_like(arr)
                for j in range(k):
                    ladder = ladder + b ** j * sh ** (k - 1 - j)
                out = out - c * ladder / (b ** k * sh ** k)
        return float(out) if scalar else out

    def describe(self) -> dict:
        return {
            "mass": self.mass,
            "coeffs": list(self.coeffs),
            "core_radius": self.core_radius,
        }


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the asymptotically hyperbolic sanity checks."""

    min_scalar_curvature_excess: float
    decay_exponent_estimate: float
    is_ah: bool
    messages: tuple[str, ...] = field(default_factory=tuple)


# ----------------------------------------------------------------------
# Constructors


def _mass_horizon(mass: float) -> float:
    """Root of s^3 + s = 2m; the AdS-Schwarzschild horizon radius."""
    if mass == 0.0:
        return 0.0
    hi = max(1.0, (2.0 * mass) ** (1.0 / 3.0) + 1.0)
    return find_root(lambda s: s * (1.0 + s * s) - 2.0 * mass, 0.0, hi, tol=1e-15 * hi)


def _largest_root(mass: float, coeffs: tuple[float, ...]) -> float:
    """Largest positive root of the full profile f, or 0 if none."""
    hi = 1.0 + 2.0 * mass + sum(abs(c) for c in coeffs)
    for _ in range(60):
        if _profile_value(mass, coeffs, hi) > 0.0:
            break
        hi *= 2.0
    else:
        raise ValueError("profile f is not eventually positive")
    # Sign of f as s -> 0+: the stiffest term wins.  Positive limit means a
    # grid with no nonpositive values can be trusted; a negative limit means
    # a root is hiding below the scan floor and the floor must come down.
    trailing = coeffs[-1] if coeffs else 0.0
    if trailing:
        diverges_down = trailing < 0.0
    else:
        diverges_down = mass > 0.0
    lo = 1e-9
    for _ in range(10):
        grid = np.geomspace(lo, hi, 4096)
        vals = _profile_value(mass, coeffs, grid)
        nonpos = np.flatnonzero(vals <= 0.0)
        if nonpos.size:
            i = int(nonpos[-1])
            if i + 1 >= grid.size:
                raise ValueError("profile f is not eventually positive")
            a, b = float(grid[i]), float(grid[i + 1])
            return find_root(
                lambda s: _profile_value(mass, coeffs, s), a, b, tol=1e-15 * b
            )
        if not diverges_down:
            return 0.0
        lo *= 1e-6
    raise ValueError("failed to bracket the core root")


def _profile_value(mass, coeffs, s):
    arr = np.asarray(s, dtype=float)
    out = 1.0 + arr * arr
    if mass:
        out = out - 2.0 * mass / arr
    for k, c in enumerate(coeffs, start=2):
        if c:
            out = out + c * arr ** (-k)
    return out if arr.ndim else float(out)


def make_hyperbolic() -> RadialMetric:
    """Hyperbolic 3-space: f = 1 + s^2, domain s > 0."""
    return RadialMetric(mass=0.0, coeffs=(), core_radius=0.0)


def make_ads_schwarzschild(mass: float) -> RadialMetric:
    """AdS-Schwarzschild slice of mass m > 0: f = 1 + s^2 - 2m/s."""
    if not math.isfinite(mass) or mass <= 0.0:
        raise ValueError(f"mass must be finite and > 0, got {mass!r}")
    return RadialMetric(mass=mass, coeffs=(), core_radius=_mass_horizon(mass))


def make_perturbed(mass: float, coeffs: Sequence[float]) -> RadialMetric:
    """General member with decay tail sum c_k s^{-k}, k = 2, 3, ...

    The tail may shrink the core (fill in the profile near the horizon)
    but must not push it outward: a coefficient list that makes f vanish
    beyond the mass horizon removes part of the model's domain and is
    rejected.
    """
    if not math.isfinite(mass) or mass < 0.0:
        raise ValueError(f"mass must be finite and >= 0, got {mass!r}")
    coeffs = tuple(float(c) for c in coeffs)
    if any(not math.isfinite(c) for c in coeffs):
        raise ValueError("perturbation coefficients must be finite")
    base = _mass_horizon(mass)
    core = _largest_root(mass, coeffs) if coeffs else base
    if core > base * (1.0 + 1e-9) + 1e-12:
        raise ValueError(
            f"perturbation removes the positive domain near s = {core:.4g} "
            f"(mass horizon is at s = {base:.4g})"
        )
    return RadialMetric(mass=mass, coeffs=coeffs, core_radius=core)


# ----------------------------------------------------------------------
# Curvature


def scalar_curvature(metric: RadialMetric, s):
    """Scalar curvature R(s) = (2/s^2) (1 - f - s f').

    Equals -6 identically for hyperbolic space and AdS-Schwarzschild.
    """
    arr, scalar = _as_float_array(s)
    _check_domain(metric, arr)
    fv = metric.f(arr)
    fp = metric.f_prime(arr)
    out = (2.0 / (arr * arr)) * (1.0 - fv - arr * fp)
    return float(out) if scalar else out


def scalar_curvature_excess(metric: RadialMetric, s):
    """R(s) + 6 evaluated without forming R first.

    Algebraically R + 6 = -(2/s^2) (d + s d') with d the deficit; the
    mass term cancels identically, leaving sum 2 (k-1) c_k s^{-k-2}.
    The direct route through scalar_curvature loses the excess to
    rounding once it falls below ~1e-15 * s^0, this one does not.
    """
    arr, scalar = _as_float_array(s)
    _check_domain(metric, arr)
    out = np.zeros_like(arr)
    for k, c in enumerate(metric.coeffs, start=2):
        if c:
            out = out + 2.0 * (k - 1) * c * arr ** (-k - 2)
    return float(out) if scalar else out


def _check_domain(metric: RadialMetric, arr: np.ndarray):
    if np.any(arr <= metric.core_radius) or np.any(~np.isfinite(arr)):
        raise ValueError(
            f"s must lie in ({metric.core_radius!r}, inf), got {arr!r}"
        )


# ----------------------------------------------------------------------
# Geodesic coordinate


def _gap_integrand(metric: RadialMetric):
    """Integrand of the coordinate gap, stable at every scale.

    f^{-1/2} - (1+u^2)^{-1/2} rewritten as -d / (sqrt(f) sqrt(q)
    (sqrt(f) + sqrt(q))) with q = 1 + u^2; the subtraction form loses
    relative accuracy like u^2/d once u is large.
    """

    def g(u):
        u = np.asarray(u, dtype=float)
        q = 1.0 + u * u
        fv = metric.f(u)
        d = metric.deficit(u)
        sf = np.sqrt(fv)
        sq = np.sqrt(q)
        return -d / (sf * sq * (sf + sq))

    return g


def coordinate_gap(metric: RadialMetric, s: float, quad_tol: float = 1e-13) -> QuadResult:
    """G(s) = integral_s^inf [f(u)^{-1/2} - (1+u^2)^{-1/2}] du.

    Defined for s >= core_radius.  At s = core_radius (mass > 0) the
    integrand has an integrable 1/sqrt singularity which is removed by
    the substitution u = core + w^2.
    """
    core = metric.core_radius
    if not math.isfinite(s) or s < core:
        raise ValueError(f"s must lie in [{core!r}, inf), got {s!r}")
    g = _gap_integrand(metric)
    if core > 0.0 and s < core + 1.0:
        # Near the core f vanishes like f'(core)(s - core), so the
        # integrand carries a 1/sqrt spike; remove it by u = core + w^2.
        def g_head(w):
            w = np.asarray(w, dtype=float)
            delta = w * w
            b = core + delta
            q = 1.0 + b * b
            d = metric.deficit(b)
            sw = np.sqrt(metric.core_quotient(delta))
            sq = np.sqrt(q)
            return -2.0 * d / (sw * sq * (w * sw + sq))

        head = integrate(
            g_head, math.sqrt(s - core), 1.0, abs_tol=1e-14, rel_tol=quad_tol
        )
        tail = integrate(g, core + 1.0, math.inf, abs_tol=1e-300, rel_tol=quad_tol)
        return QuadResult(
            head.value + tail.value,
            head.error_bound + tail.error_bound,
            head.evaluations + tail.evaluations,
        )
    if s > 0.0:
        # The relative floor, not abs_tol, is what matters here: G decays
        # like m/s^2 and is consumed relatively by downstream expansions.
        return integrate(g, s, math.inf, abs_tol=1e-300, rel_tol=quad_tol)
    # s == core == 0: the integrand is bounded but f may still blow up
    # at the origin when tail coefficients are present; keep the origin
    # panel separate with an absolute floor.
    head = integrate(g, 0.0, 1.0, abs_tol=1e-14, rel_tol=quad_tol)
    tail = integrate(g, 1.0, math.inf, abs_tol=1e-300, rel_tol=quad_tol)
    return QuadResult(
        head.value + tail.value,
        head.error_bound + tail.error_bound,
        head.evaluations + tail.evaluations,
    )


def rho_from_s(metric: RadialMetric, s: float, quad_tol: float = 1e-13) -> float:
    """Geodesic radius of the sphere at area-radius s.

    rho(s) = arcsinh(s) - G(s) with G the coordinate gap, so that
    d rho / d s = f(s)^{-1/2} and rho(s) -> arcsinh(s) at infinity.
    For hyperbolic space G vanishes and rho = arcsinh(s) exactly.
    """
    if not math.isfinite(s) or s <= metric.core_radius:
        raise ValueError(
            f"s must lie in ({metric.core_radius!r}, inf), got {s!r}"
        )
    return math.asinh(s) - coordinate_gap(metric, s, quad_tol).value


def s_from_rho(metric: RadialMetric, rho: float, quad_tol: float = 1e-13) -> float:
    """Numerical inverse of rho_from_s."""
    if not math.isfinite(rho):
        raise ValueError(f"rho must be finite, got {rho!r}")
    core = metric.core_radius
    lo = core + 1e-12 * (1.0 + core) if core > 0.0 else 1e-300
    if core > 0.0 and rho_from_s(metric, lo, quad_tol) >= rho:
        raise ValueError(f"rho = {rho!r} is below the image of the domain")
    # s > sinh(rho) whenever the gap is positive; expand upward regardless.
    hi = max(math.sinh(max(rho, 0.0)) + 1.0, lo * 2.0, 1.0)
    for _ in range(200):
        if rho_from_s(metric, hi, quad_tol) >= rho:
            break
        hi *= 2.0
    else:
        raise ValueError(f"failed to bracket s for rho = {rho!r}")
    if core == 0.0 and rho_from_s(metric, lo, quad_tol) > rho:
        raise ValueError(f"rho = {rho!r} is below the image of the domain")
    return find_root(
        lambda s: rho_from_s(metric, s, quad_tol) - rho,
        lo,
        hi,
        tol=1e-12 * max(1.0, hi),
    )


# ----------------------------------------------------------------------
# Validation


def default_grid(metric: RadialMetric, n: int = 50, s_max: float = 1e3) -> np.ndarray:
    """Log-spaced sample grid [core + 0.1, s_max] used by validation."""
    lo = metric.core_radius + 0.1
    return np.geomspace(lo, s_max, n)


def validate_ah(
    metric: RadialMetric,
    s_grid=None,
    tolerance: float = 1e-9,
) -> ValidationReport:
    """Check the asymptotically hyperbolic model requirements on a grid.

    Two properties are examined: the scalar curvature excess R + 6 must
    be nonnegative up to ``tolerance``, and the perturbation part of the
    profile, f - (1 + s^2 - 2m/s), must decay at least like s^{-2}.
    The decay exponent is fit by log-log regression on the tail half of
    the grid and is +inf when the perturbation vanishes.
    """
    if s_grid is None:
        s_grid = default_grid(metric)
    grid = np.asarray(s_grid, dtype=float)
    if grid.size == 0:
        raise ValueError("s_grid must be nonempty")
    if np.any(np.diff(grid) <= 0.0):
        raise ValueError("s_grid must be strictly increasing")
    _check_domain(metric, grid)

    excess = scalar_curvature_excess(metric, grid)
    min_excess = float(np.min(excess))
    messages: list[str] = []
    if min_excess < -tolerance:
        messages.append(
            f"scalar curvature dips below -6: min excess {min_excess:.3e}"
        )

    # Perturbation part only; the mass term is part of the family.
    pert = metric.deficit(grid) + 2.0 * metric.mass / grid
    tail = grid[grid.size // 2 :]
    pert_tail = pert[grid.size // 2 :]
    mask = np.abs(pert_tail) > 1e-280
    if not metric.coeffs or not np.any(mask):
        exponent = math.inf
    else:
        slope, _ = np.polyfit(np.log(tail[mask]), np.log(np.abs(pert_tail[mask])), 1)
        exponent = float(-slope)
        if exponent < 2.0 - 1e-2:
            messages.append(
                f"perturbation decays too slowly: fitted exponent {exponent:.3f}"
            )

    is_ah = not messages
    return ValidationReport(
        min_scalar_curvature_excess=min_excess,
        decay_exponent_estimate=exponent,
        is_ah=is_ah,
        messages=tuple(messages),
    )
