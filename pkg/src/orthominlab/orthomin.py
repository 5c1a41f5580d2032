"""The Orthomin(k) iteration with per-step instrumentation.

Given ``p_0 = r_0 = b - A x_0`` each step performs::

    lam_n   = <r_n, A p_n> / <A p_n, A p_n>
    x_{n+1} = x_n + lam_n p_n
    r_{n+1} = r_n - lam_n A p_n
    p_{n+1} = r_{n+1} - sum_j nu_j p_{n-j+1},   j = 1..min(k-1, n+1)
    nu_j    = <A r_{n+1}, A p_{n-j+1}> / <A p_{n-j+1}, A p_{n-j+1}>

``A p_{n+1}`` is formed from the same linear combination, so each step costs
one operator application.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .linop import LinearOperator, as_vector, axpy, inner, norm

#: ``||A p_n||^2`` at or below this is treated as breakdown.
BREAKDOWN_TOL = 1e-290


class BreakdownError(ArithmeticError):
    """``||A p_n||`` vanished (up to underflow) before the residual did."""

    def __init__(self, n: int, ap_norm2):
        super().__init__(f"Orthomin breakdown at step {n}: ||A p_n||^2 = {float(ap_norm2):.3e}")
        self.n = n
        self.ap_norm2 = ap_norm2


@dataclass(frozen=True)
class OrthominState:
    """Solver state. ``dirs`` holds ``(p, Ap)`` pairs newest-first, at most ``k`` of them."""

    k: int
    n: int
    x: np.ndarray
    r: np.ndarray
    dirs: tuple
    lam: Optional[complex] = None
    stagnated: bool = False


def init_state(A: LinearOperator, b, x0, k: int) -> OrthominState:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    x0 = np.array(x0, copy=True)
    r0 = b - A.apply(x0)
    return OrthominState(k=k, n=0, x=x0, r=r0, dirs=((r0.copy(), A.apply(r0)),))


def step(state: OrthominState, A: LinearOperator, breakdown_tol=BREAKDOWN_TOL) -> OrthominState:
    """Advance one Orthomin(k) iteration and return the new state."""
    p, Ap = state.dirs[0]
    ap2 = inner(Ap, Ap).real
    if ap2 <= breakdown_tol:
        raise BreakdownError(state.n, ap2)
    lam = inner(state.r, Ap) / ap2
    x = axpy(lam, p, state.x)
    r = axpy(-lam, Ap, state.r)
    Ar = A.apply(r)

    p_new, Ap_new = r.copy(), Ar.copy()
    for pj, Apj in state.dirs[: min(state.k - 1, state.n + 1)]:
        nu = inner(Ar, Apj) / inner(Apj, Apj).real
        p_new = axpy(-nu, pj, p_new)
        Ap_new = axpy(-nu, Apj, Ap_new)

    dirs = ((p_new, Ap_new),) + state.dirs[: state.k - 1]
    return replace(state, n=state.n + 1, x=x, r=r, dirs=dirs, lam=lam, stagnated=(lam == 0))


def residual_projection_oracle(r, Aps, drop_tol: float = 1e-12) -> np.ndarray:
    """``r`` minus its orthogonal projection onto ``span(Aps)``.

    Built from scratch by Gram-Schmidt (two passes per vector) so it shares
    nothing with :func:`step`. Vectors whose orthogonalized norm falls below
    ``drop_tol`` times their original norm are dropped.
    """
    if len(Aps) == 0:
        raise ValueError("need at least one direction")
    basis = []
    for a in Aps:
        a = np.asarray(a, dtype=complex)
        original = norm(a)
        if original == 0:
            raise ValueError("direction vectors must be nonzero")
        w = a.copy()
        for _ in range(2):
            for q in basis:
                w = w - inner(w, q) * q
        wn = norm(w)
        if wn < drop_tol * original:
            continue
        basis.append(w / wn)
    out = np.asarray(r, dtype=complex).copy()
    for q in basis:
        out = out - inner(out, q) * q
    return out


@dataclass
class StoppingRule:
    """``breakdown`` is ``"stop"`` (end the trace, report status) or ``"raise"``."""

    max_iters: int = 200
    rtol: float = 0.0
    breakdown: str = "stop"
    breakdown_tol: float = BREAKDOWN_TOL


@dataclass
class TraceRecord:
    n: int
    residual_norm: float
    q: Optional[float] = None
    lam: Optional[complex] = None
    omega: Optional[complex] = None


@dataclass
class ConvergenceTrace:
    """Per-iteration record of a solve.

    Record ``n`` holds ``||r_n||``, and once ``r_{n+1}`` exists also
    ``q_n = ||r_{n+1}||/||r_n||`` and the step length ``lam_n``.
    """

    k: int
    records: list = field(default_factory=list)
    status: str = "running"
    bounds: dict = field(default_factory=dict)

    @property
    def residual_norms(self) -> np.ndarray:
        return np.array([float(rec.residual_norm) for rec in self.records])

    @property
    def q_values(self) -> np.ndarray:
        return np.array([float(rec.q) for rec in self.records if rec.q is not None])

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([complex(rec.lam) for rec in self.records if rec.lam is not None])

    @property
    def omegas(self) -> np.ndarray:
        return np.array([complex(rec.omega) for rec in self.records if rec.omega is not None])

    def __len__(self):
        return len(self.records)


def _omega(zeta, r):
    rr = inner(r, r).real
    return inner(zeta * r, r) / rr if rr > 0 else None


def solve(A: LinearOperator, b, x0=None, k: int = 1, stop: Optional[StoppingRule] = None,
          zeta=None, bounds: Optional[dict] = None):
    """Run Orthomin(k) on ``A x = b``.

    Returns the final iterate and a :class:`ConvergenceTrace`. Passing the
    unit-modulus part ``zeta`` of a diagonal ``I + rho*U`` system records the
    first moment ``omega_n = <U r_n, r_n>/<r_n, r_n>`` at every step.
    Non-convergence is reported through ``trace.status``, never raised.
    """
    stop = stop or StoppingRule()
    b = as_vector(b, dtype=object if np.asarray(b).dtype == object else complex)
    if b.shape[0] != A.d:
        raise ValueError(f"rhs length {b.shape[0]} does not match operator dimension {A.d}")
    if x0 is None:
        x0 = np.zeros_like(b)
    state = init_state(A, b, x0, k)
    trace = ConvergenceTrace(k=k, bounds=dict(bounds or {}))

    r0_norm = norm(state.r)
    rn = r0_norm
    trace.records.append(TraceRecord(0, rn, omega=_omega(zeta, state.r) if zeta is not None else None))
    while True:
        if rn == 0 or (stop.rtol > 0 and rn <= stop.rtol * r0_norm):
            trace.status = "converged"
            break
        if state.n >= stop.max_iters:
            trace.status = "max_iters"
            break
        try:
            state = step(state, A, stop.breakdown_tol)
        except BreakdownError:
            if stop.breakdown == "raise":
                raise
            trace.status = "breakdown"
            break
        new_norm = norm(state.r)
        last = trace.records[-1]
        last.q = new_norm / rn
        last.lam = state.lam
        rn = new_norm
        trace.records.append(
            TraceRecord(state.n, rn, omega=_omega(zeta, state.r) if zeta is not None else None)
        )
        if state.stagnated:
            trace.status = "stagnation"
            break
    return state.x, trace
