"""Convergence-ratio analytics, a priori bounds and planar hull geometry."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from .orthomin import ConvergenceTrace


class ContractError(ValueError):
    """A check was called outside the hypotheses under which it means anything."""


def convex_hull(points: Sequence[complex]) -> list:
    """Monotone-chain convex hull, counter-clockwise, as a list of complex vertices.

    Duplicate points collapse; a hull of one or two points is returned as is.
    """
    pts = sorted({(float(np.real(z)), float(np.imag(z))) for z in points})
    if len(pts) <= 2:
        return [complex(x, y) for x, y in pts]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return [complex(x, y) for x, y in lower[:-1] + upper[:-1]]


def _segment_distance(z: complex, a: complex, b: complex) -> float:
    ab = b - a
    L2 = abs(ab) ** 2
    if L2 == 0:
        return abs(z - a)
    t = ((z - a) * ab.conjugate()).real / L2
    t = min(1.0, max(0.0, t))
    return abs(z - (a + t * ab))


def hull_distance(points: Sequence[complex], z: complex) -> float:
    """Distance from ``z`` to the convex hull of ``points`` (0 inside or on it)."""
    if len(points) == 0:
        raise ValueError("points must be nonempty")
    z = complex(z)
    hull = convex_hull(points)
    if len(hull) == 1:
        return abs(z - hull[0])
    if len(hull) == 2:
        return _segment_distance(z, hull[0], hull[1])
    inside = True
    for a, b in zip(hull, hull[1:] + hull[:1]):
        if ((b - a).conjugate() * (z - a)).imag < 0:
            inside = False
            break
    if inside:
        return 0.0
    return min(_segment_distance(z, a, b) for a, b in zip(hull, hull[1:] + hull[:1]))


def fov_distance_normal(mu: Sequence[complex]) -> float:
    """Distance from 0 to the field of values of a normal operator with eigenvalues ``mu``."""
    return hull_distance(mu, 0.0)


def eisenstat_bound(delta: float, opnorm: float) -> float:
    """Per-step contraction ``sqrt(1 - delta^2/||A||^2)`` valid when 0 is outside F(A)."""
    if opnorm <= 0:
        raise ValueError("operator norm must be positive")
    if delta < 0 or delta > opnorm * (1 + 1e-12):
        raise ValueError(f"need 0 <= delta <= ||A||, got delta={delta}, ||A||={opnorm}")
    # delta == ||A|| (a single eigenvalue) may come out an ulp high
    return math.sqrt(max(0.0, 1.0 - (delta / opnorm) ** 2))


def circle_bounds(rho: float, z0_mod: float) -> tuple:
    """Contraction factors for a normal operator with spectrum in the disc ``B_rho(z0)``.

    Returns ``(rho/|z0|, 2*sqrt(rho/|z0|)/(1 + rho/|z0|))``: the sharp bound for
    normal operators and the one implied by the field-of-values bound.
    """
    if not 0 <= rho < z0_mod:
        raise ValueError(f"need 0 <= rho < |z0|, got rho={rho}, |z0|={z0_mod}")
    s = rho / z0_mod
    return s, 2 * math.sqrt(s) / (1 + s)


@dataclass
class BoundReport:
    fov_distance: float
    operator_norm: float
    eisenstat_bound: Optional[float]
    normal_bound: Optional[float] = None
    classic_bound: Optional[float] = None

    def to_dict(self) -> dict:
        return asdict(self)


def bound_report(mu: Sequence[complex], rho: Optional[float] = None, z0: complex = 1.0) -> BoundReport:
    """Bounds for the diagonal operator ``diag(mu)``; circle bounds when ``rho`` is given."""
    mu = np.asarray(mu, dtype=complex)
    delta = fov_distance_normal(mu)
    opnorm = float(np.max(np.abs(mu)))
    eb = eisenstat_bound(delta, opnorm) if delta > 0 else None
    report = BoundReport(fov_distance=delta, operator_norm=opnorm, eisenstat_bound=eb)
    if rho is not None and 0 < rho < abs(z0):
        report.normal_bound, report.classic_bound = circle_bounds(rho, abs(z0))
    return report


@dataclass
class RateEstimate:
    limit: float
    window: int
    residual_spread: float

    def to_dict(self) -> dict:
        return asdict(self)


def _q_of(trace) -> np.ndarray:
    if isinstance(trace, ConvergenceTrace):
        return trace.q_values
    return np.asarray(trace, dtype=float)


def estimate_rate(trace, window: int = 10) -> RateEstimate:
    """Median of the trailing ``window`` ratios ``q_n``.

    The median is robust to the oscillating ratios that large ``k`` produces
    on small problems; ``residual_spread`` (max - min over the window) lets
    callers reject such traces.
    """
    if window < 1:
        raise ValueError("window must be positive")
    q = _q_of(trace)
    if len(q) < window:
        raise ValueError(f"trace too short: {len(q)} ratios for a window of {window}")
    tail = q[-window:]
    return RateEstimate(limit=float(np.median(tail)), window=window,
                        residual_spread=float(tail.max() - tail.min()))


def monotonicity_check(trace, tol: float = 1e-12) -> bool:
    """True iff ``q_n`` is nondecreasing (within ``tol``) and lies in ``[0, 1]``."""
    q = _q_of(trace)
    if np.any(q < 0) or np.any(q > 1 + tol):
        return False
    return bool(np.all(np.diff(q) >= -tol))


def pearson_inequality_check(xi, weights, tol: float = 1e-12, identity_tol: float = 1e-10) -> bool:
    """Check ``E|x|^2 E|1-x|^2 E(|x|^2 |1-x|^2) >= |E(x |1-x|^2)|^2`` for a discrete law.

    Only meaningful when ``E(x) = E(|x|^2)``; other inputs raise :class:`ContractError`.
    """
    xi = np.asarray(xi, dtype=complex)
    w = np.asarray(weights, dtype=float)
    if xi.shape != w.shape:
        raise ContractError("samples and weights differ in length")
    if np.any(w < 0) or abs(w.sum() - 1) > 1e-12:
        raise ContractError("weights must be nonnegative and sum to 1")
    E = lambda f: np.sum(w * f)  # noqa: E731
    a2 = np.abs(xi) ** 2
    b2 = np.abs(1 - xi) ** 2
    if abs(E(xi) - E(a2)) > identity_tol:
        raise ContractError(f"moment identity E(x) = E(|x|^2) fails: {E(xi)} vs {E(a2)}")
    lhs = E(a2) * E(b2) * E(a2 * b2)
    rhs = abs(E(xi * b2)) ** 2
    return bool(lhs >= rhs - tol)
