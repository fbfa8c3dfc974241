"""Deterministic numeric kernels: adaptive quadrature, an embedded
Runge-Kutta integrator, and bracketed root finding.

All three routines are reproducible bit for bit across runs: there is no
randomness, no thread-order dependence, and refinement always proceeds in
a fixed order.  Convergence failures raise :class:`NumericsError` rather
than returning a degraded result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "NumericsError",
    "QuadResult",
    "OdeSolution",
    "integrate",
    "solve_ode",
    "find_root",
]


class NumericsError(RuntimeError):
    """A kernel failed to converge within its evaluation budget."""


# Gauss-Kronrod 7-15 nodes and weights on [-1, 1].  Positive abscissae only;
# the rule is symmetric.  Even indices are the embedded Gauss-7 points.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full 15-point node vector in ascending order, plus matching weight vectors.
_NODES = np.concatenate([-_XK[:7], _XK[7:8], _XK[6::-1]])
_WKF = np.concatenate([_WK[:7], _WK[7:8], _WK[6::-1]])
_wg_half = _WG[:3]
_WGF = np.zeros(15)
_WGF[1:7:2] = _wg_half
_WGF[7] = _WG[3]
_WGF[9:15:2] = _wg_half[::-1]


@dataclass(frozen=True)
class QuadResult:
    """Value and a conservative error bound for one definite integral."""

    value: float
    error_bound: float
    evaluations: int


@dataclass(frozen=True)
class OdeSolution:
    """Sampled solution curve of a scalar initial value problem."""

    xs: np.ndarray
    ys: np.ndarray
    n_steps: int
    n_rejected: int
    rhs_evaluations: int

    def __post_init__(self):
        if self.xs.shape != self.ys.shape:
            raise ValueError("xs and ys must have matching shapes")


def _eval_batch(fn: Callable, xs: np.ndarray) -> np.ndarray:
    """Evaluate fn on an array, falling back to a scalar loop."""
    try:
        out = np.asarray(fn(xs), dtype=float)
        if out.shape == xs.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([float(fn(x)) for x in xs], dtype=float)


def _gk15(fn: Callable, a: float, b: float) -> tuple[float, float, np.ndarray]:
    """One Gauss-Kronrod 7-15 panel on [a, b].

    Returns (kronrod value, error estimate, sampled values).  The error
    estimate follows the usual rescaled |K15 - G7| rule, which is sharp on
    smooth integrands and conservative near integrable singularities.
    """
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    xs = mid + half * _NODES
    fv = _eval_batch(fn, xs)
    if not np.all(np.isfinite(fv)):
        bad = xs[~np.isfinite(fv)][0]
        raise NumericsError(f"integrand not finite at x={bad!r}")
    resk = half * float(_WKF @ fv)
    resg = half * float(_WGF @ fv)
    resabs = abs(half) * float(_WKF @ np.abs(fv))
    mean = resk / (b - a) if b != a else 0.0
    resasc = abs(half) * float(_WKF @ np.abs(fv - mean))
    err = abs(resk - resg)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    # Guard against an error estimate below attainable rounding.
    err = max(err, 50.0 * np.finfo(float).eps * resabs)
    return resk, err, fv


def integrate(
    fn: Callable,
    a: float,
    b: float,
    abs_tol: float = 1e-10,
    rel_tol: float = 1e-13,
    max_evals: int = 400_000,
) -> QuadResult:
    """Adaptive Gauss-Kronrod integration of ``fn`` over [a, b].

    Parameters
    ----------
    fn : callable
        Integrand.  May accept numpy arrays; a scalar-only callable is
        handled by an internal loop.
    a, b : float
        Integration limits.  ``b = math.inf`` is handled by the u = 1/s
        substitution, which requires ``a > 0``.
    abs_tol : float
        Requested absolute tolerance on the total error bound.
    rel_tol : float
        Relative floor: refinement stops once the error bound is below
        ``max(abs_tol, rel_tol * |value|)``.  Keeps large-magnitude
        integrals from demanding impossible absolute accuracy.
    max_evals : int
        Evaluation budget; exceeding it raises :class:`NumericsError`.

    Returns
    -------
    QuadResult
        ``value`` with ``error_bound`` such that the true integral lies
        within ``value +/- error_bound`` up to estimator reliability.
    """
    if not math.isfinite(a):
        raise ValueError("lower limit must be finite")
    if b < a:
        raise ValueError(f"integration limits must satisfy a <= b, got [{a!r}, {b!r}]")
    if abs_tol <= 0.0:
        raise ValueError("abs_tol must be positive")
    if math.isinf(b):
        if b < 0:
            raise ValueError("lower-infinite limits are not supported")
        if a <= 0.0:
            raise ValueError("infinite upper limit requires a > 0")
        inner = fn

        def transformed(u):
            u = np.asarray(u, dtype=float)
            s = 1.0 / u
            return _eval_batch(inner, s) * s * s

        return integrate(transformed, 0.0, 1.0 / a, abs_tol, rel_tol, max_evals)
    if a == b:
        return QuadResult(0.0, 0.0, 0)

    val, err, _ = _gk15(fn, a, b)
    # Interval records: (error, left, right, value).  Worst-first refinement;
    # ties are broken by insertion order, which is deterministic.
    intervals = [(err, a, b, val)]
    evals = 15
    while True:
        total = sum(iv[3] for iv in intervals)
        total_err = sum(iv[0] for iv in intervals)
        if total_err <= max(abs_tol, rel_tol * abs(total)):
            return QuadResult(total, total_err, evals)
        if evals + 30 > max_evals:
            raise NumericsError(
                f"quadrature budget exhausted: error bound {total_err:.3e} "
                f"after {evals} evaluations (target {abs_tol:.3e})"
            )
        worst = max(range(len(intervals)), key=lambda i: intervals[i][0])
        _, lo, hi, _ = intervals.pop(worst)
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            raise NumericsError(
                f"interval [{lo!r}, {hi!r}] cannot be subdivided further"
            )
        v1, e1, _ = _gk15(fn, lo, mid)
        v2, e2, _ = _gk15(fn, mid, hi)
        intervals.append((e1, lo, mid, v1))
        intervals.append((e2, mid, hi, v2))
        evals += 30


# Fehlberg 4(5) coefficients.  The fifth order solution is propagated and
# the 4/5 difference drives step control, so observed global error shrinks
# faster than the tolerance (roughly tol^{5/4} on smooth problems).
_C = np.array([0.0, 0.25, 3.0 / 8.0, 12.0 / 13.0, 1.0, 0.5])
_A = [
    np.array([]),
    np.array([0.25]),
    np.array([3.0 / 32.0, 9.0 / 32.0]),
    np.array([1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0]),
    np.array([439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0]),
    np.array([-8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0]),
]
_B5 = np.array([16.0 / 135.0, 0.0, 6656.0 / 12825.0, 28561.0 / 56430.0, -9.0 / 50.0, 2.0 / 55.0])
_B4 = np.array([25.0 / 216.0, 0.0, 1408.0 / 2565.0, 2197.0 / 4104.0, -1.0 / 5.0, 0.0])


def solve_ode(
    rhs: Callable[[float, float], float],
    y0: float,
    x0: float,
    x1: float,
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-12,
    x_eval: Sequence[float] | None = None,
    max_steps: int = 1_000_000,
) -> OdeSolution:
    """Integrate the scalar IVP y' = rhs(x, y), y(x0) = y0, up to x1.

    Uses an embedded Fehlberg 4(5) pair with proportional step control.
    Steps are clamped so that every requested output abscissa is hit
    exactly; no interpolation is performed.

    Parameters
    ----------
    x_eval : sequence of float, optional
        Strictly increasing abscissae in [x0, x1] at which the solution is
        recorded.  When omitted every accepted step is recorded.

    Raises
    ------
    NumericsError
        On step-size underflow or step-budget exhaustion.
    ValueError
        If x1 <= x0 or x_eval leaves [x0, x1] or is not increasing.
    """
    if not (x1 > x0):
        raise ValueError("x1 must exceed x0")
    if rel_tol <= 0.0 or abs_tol < 0.0:
        raise ValueError("tolerances must be positive")
    if x_eval is not None:
        xe = np.asarray(x_eval, dtype=float)
        if xe.ndim != 1 or xe.size == 0:
            raise ValueError("x_eval must be a nonempty 1-d sequence")
        if np.any(np.diff(xe) <= 0.0):
            raise ValueError("x_eval must be strictly increasing")
        if xe[0] < x0 or xe[-1] > x1:
            raise ValueError("x_eval must lie within [x0, x1]")
    else:
        xe = None

    span = x1 - x0
    x = x0
    y = float(y0)
    out_x: list[float] = []
    out_y: list[float] = []
    eval_idx = 0
    if xe is not None and xe[0] == x0:
        out_x.append(x0)
        out_y.append(y)
        eval_idx = 1
    elif xe is None:
        out_x.append(x0)
        out_y.append(y)

    h = span / 100.0
    n_steps = 0
    n_rejected = 0
    n_rhs = 0
    k = np.empty(6)
    while x < x1:
        target = x1
        if xe is not None and eval_idx < xe.size:
            target = min(target, float(xe[eval_idx]))
        h = min(h, target - x)
        if h <= 1e-14 * max(1.0, abs(x)):
            raise NumericsError(f"step size underflow at x={x!r}")
        for i in range(6):
            yi = y + h * float(_A[i] @ k[:i]) if i else y
            k[i] = rhs(x + _C[i] * h, yi)
        n_rhs += 6
        y5 = y + h * float(_B5 @ k)
        y4 = y + h * float(_B4 @ k)
        err = abs(y5 - y4)
        # Error budget per unit step; the global error then tracks rel_tol.
        scale = rel_tol * max(abs(y), abs(y5)) + abs_tol
        budget = scale * (h / span)
        if err <= budget or h <= 16.0 * np.finfo(float).eps * max(1.0, abs(x)):
            x = x + h
            y = y5
            n_steps += 1
            if xe is not None:
                if eval_idx < xe.size and x >= float(xe[eval_idx]):
                    out_x.append(float(xe[eval_idx]))
                    out_y.append(y)
                    eval_idx += 1
            else:
                out_x.append(x)
                out_y.append(y)
        else:
            n_rejected += 1
        if n_steps + n_rejected > max_steps:
            raise NumericsError("step budget exhausted")
        ratio = budget / err if err > 0.0 else 10.0
        h = h * min(5.0, max(0.2, 0.9 * ratio ** 0.2))
    return OdeSolution(
        xs=np.array(out_x),
        ys=np.array(out_y),
        n_steps=n_steps,
        n_rejected=n_rejected,
        rhs_evaluations=n_rhs,
    )


def find_root(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Root of fn on [lo, hi] by bisection plus one secant refinement.

    Requires a sign change on the bracket.  Bisection runs until the
    bracket width falls below ``tol`` (or the floating point grid), then a
    single secant step polishes the estimate without leaving the bracket.
    """
    if not (hi > lo):
        raise ValueError("need hi > lo")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    flo = float(fn(lo))
    fhi = float(fn(hi))
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise NumericsError(
            f"no sign change on [{lo!r}, {hi!r}]: f(lo)={flo!r}, f(hi)={fhi!r}"
        )
    a, b, fa, fb = lo, hi, flo, fhi
    for _ in range(max_iter):
        if b - a <= tol:
            break
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = float(fn(m))
        if fm == 0.0:
            return m
        if fa * fm < 0.0:
            b, fb = m, fm
        else:
            a, fa = m, fm
    # Secant refinement, clamped to the final bracket.
    if fb != fa:
        x = a - fa * (b - a) / (fb - fa)
        if a < x < b:
            return x
    return 0.5 * (a + b)
