"""Orthomin(1) measure dynamics for ``A = I + rho*U`` with ``U`` unitary diagonal.

The residual ``r_n`` defines a probability measure on the eigenvalues of
``U`` (weights ``|r_n^k|^2``). Its moments
``omega_{n,j} = <U^j r_n, r_n> / <r_n, r_n>`` determine the whole run:
``lambda_n``, ``T_n`` and ``q_n`` are closed-form functions of
``omega_n = omega_{n,1}``, and the moments evolve by the three-term recurrence
in :func:`advance`.

Two modes are supported. ``finite``: ``U`` holds the ``d``-th roots of unity,
so moments are ``d``-periodic in ``j``. ``haar_truncated``: the
infinite-dimensional multiplication operator on the unit circle with
``r_0 = 1``, where ``omega_{0,j} = 0`` for ``j >= 1``; each step consumes the
top stored moment.
"""

from __future__ import annotations

import csv
import io
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

import mpmath
import numpy as np

from .diagnostics import ContractError
from .exact import ExactComplex
from .linop import DiagonalOperator, inner, norm
from .orthomin import BreakdownError, init_state, step
from .spectra import roots_of_unity


class TruncationExhausted(RuntimeError):
    """A haar-mode sequence ran out of stored moments."""


class IdentityViolation(AssertionError):
    """An exact identity failed; either the implementation or the theory is wrong."""


def closed_forms(omega: complex, rho: float):
    """``(lambda, T, q)`` from the first moment ``omega`` of the residual measure.

    ``lambda = (1 + rho*conj(w)) / D``, ``T = (w + rho) / (rho*conj(w) + 1)``,
    ``q = rho * sqrt((1 - |w|^2) / D)`` with ``D = 1 + rho^2 + 2*rho*Re(w)``.
    """
    omega = complex(omega)
    den = 1 + rho * rho + 2 * rho * omega.real
    lam = (1 + rho * omega.conjugate()) / den
    T = (omega + rho) / (rho * omega.conjugate() + 1)
    q = rho * math.sqrt(max(0.0, 1 - abs(omega) ** 2) / den)
    return lam, T, q


@dataclass(frozen=True)
class MomentRow:
    n: int
    omega: np.ndarray
    T: complex
    lam: complex
    beta: complex
    q: float


def _row(n: int, omega: np.ndarray, rho: float) -> MomentRow:
    lam, T, q = closed_forms(omega[1], rho)
    return MomentRow(n=n, omega=omega, T=T, lam=lam, beta=1 - lam, q=q)


@dataclass(frozen=True)
class MomentSequence:
    """Rows of moments for successive Orthomin(1) steps.

    ``finite`` rows store ``omega_{n,0..d-1}``; ``haar_truncated`` rows store
    ``omega_{n,0..J_n}`` with ``J_n`` shrinking by one per step.
    """

    mode: str
    rho: float
    rows: tuple
    d: Optional[int] = None

    @property
    def last(self) -> MomentRow:
        return self.rows[-1]

    def moment(self, n: int, j: int) -> complex:
        om = self.rows[n].omega
        if self.mode == "finite":
            return om[j % self.d]
        if j < 0:
            return np.conj(self.moment(n, -j))
        if j >= len(om):
            raise TruncationExhausted(f"moment {j} not stored at step {n} (max {len(om) - 1})")
        return om[j]

    def to_csv(self, J: int, digits: int = 10) -> str:
        """CSV with columns n, T, lambda, |beta|, q and ``omega_j`` pairs up to ``J``."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header = ["n", "T_re", "T_im", "lambda_re", "lambda_im", "beta_abs", "q"]
        for j in range(J + 1):
            header += [f"omega_{j}_re", f"omega_{j}_im"]
        w.writerow(header)
        fmt = lambda x: f"{x:.{digits}g}"  # noqa: E731
        for row in self.rows:
            out = [row.n, fmt(row.T.real), fmt(row.T.imag), fmt(row.lam.real), fmt(row.lam.imag),
                   fmt(abs(row.beta)), fmt(row.q)]
            for j in range(J + 1):
                try:
                    z = complex(self.moment(row.n, j))
                    out += [fmt(z.real), fmt(z.imag)]
                except TruncationExhausted:
                    out += ["", ""]
            w.writerow(out)
        return buf.getvalue()


def finite_sequence(d: int, rho: float, r0=None) -> MomentSequence:
    """Start a finite-mode sequence for ``U = diag(d-th roots of unity)``."""
    zeta = roots_of_unity(d)
    r0 = np.ones(d, dtype=complex) if r0 is None else np.asarray(r0, dtype=complex)
    w = np.abs(r0) ** 2
    w = w / w.sum()
    omega = np.array([np.sum(w * zeta ** j) for j in range(d)])
    omega[0] = 1.0
    return MomentSequence(mode="finite", rho=rho, rows=(_row(0, omega, rho),), d=d)


def haar_sequence(rho: float, J: int) -> MomentSequence:
    """Start a haar-mode sequence storing moments ``0..J`` (all zero but the first)."""
    if J < 1:
        raise ValueError("need J >= 1")
    omega = np.zeros(J + 1, dtype=complex)
    omega[0] = 1.0
    return MomentSequence(mode="haar_truncated", rho=rho, rows=(_row(0, omega, rho),))


def advance(seq: MomentSequence, rho: Optional[float] = None) -> MomentSequence:
    """Append row ``n+1`` using

    ``omega_{n+1,j} = [(1+|T|^2) w_j - T w_(j-1) - conj(T) w_(j+1)] / [1+|T|^2 - 2 Re(conj(T) w_1)]``.
    """
    rho = seq.rho if rho is None else rho
    row = seq.last
    T = row.T
    om = row.omega
    a = 1 + abs(T) ** 2
    den = a - 2 * (np.conj(T) * om[1]).real
    if seq.mode == "finite":
        new = (a * om - T * np.roll(om, 1) - np.conj(T) * np.roll(om, -1)) / den
        # moments of a positive measure satisfy w_(d-j) = conj(w_j); rounding breaks this
        # and the recurrence amplifies the broken part, so project back every step
        new = 0.5 * (new + np.conj(np.roll(new[::-1], 1)))
    else:
        if len(om) < 3:
            raise TruncationExhausted(f"haar sequence exhausted at step {row.n}: only {len(om)} moments left")
        new = (a * om[1:-1] - T * om[:-2] - np.conj(T) * om[2:]) / den
        new = np.concatenate(([0.0], new))
    new[0] = 1.0
    return MomentSequence(mode=seq.mode, rho=rho, rows=seq.rows + (_row(row.n + 1, new, rho),), d=seq.d)


def evolve(seq: MomentSequence, steps: int) -> MomentSequence:
    for _ in range(steps):
        seq = advance(seq)
    return seq


def direct_moments(zeta: np.ndarray, r: np.ndarray, jmax: int) -> np.ndarray:
    """``<U^j r, r>/<r, r>`` for ``j = 0..jmax``, straight from a residual."""
    rr = inner(r, r).real
    return np.array([inner(zeta ** j * r, r) / rr for j in range(jmax + 1)])


def moments_match_solver(d: int, rho: float, r0, steps: int) -> float:
    """Largest ``|omega_{n,j}|`` gap between the recurrence and actual Orthomin(1)
    residuals over ``n <= steps``, ``j <= d``.

    If the residual underflows first (solver breakdown) the comparison covers
    the steps completed before it.
    """
    zeta = roots_of_unity(d)
    A = DiagonalOperator(1 + rho * zeta)
    r0 = np.asarray(r0, dtype=complex)
    seq = evolve(finite_sequence(d, rho, r0), steps)
    state = init_state(A, r0, np.zeros(d, dtype=complex), 1)
    worst = 0.0
    for n in range(steps + 1):
        if n:
            try:
                state = step(state, A)
            except BreakdownError:
                break
        direct = direct_moments(zeta, state.r, d)
        rec = np.array([seq.moment(n, j) for j in range(d + 1)])
        worst = max(worst, float(np.max(np.abs(direct - rec))))
    return worst


def _exact(x):
    if isinstance(x, (ExactComplex, Fraction, int)):
        return x
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact mode needs a rational rho (Fraction, int or 'p/q' string), got {type(x).__name__}")


def haar_exact_sequence(rho, n_max: int):
    """Exact ``(omega_n, T_n)`` for ``n = 0..n_max`` in the infinite-dimensional case.

    Tracks the residual as a polynomial in ``z`` with ``r_0 = 1`` and
    ``r_{n+1} ∝ (T_n - z) r_n``; against the Haar measure only neighbouring
    coefficients correlate, so ``omega_n = sum a_i conj(a_(i+1)) / sum |a_i|^2``.
    The scalar ``rho*lambda_n`` is dropped since only the direction matters.
    """
    rho = _exact(rho)
    coeffs = [Fraction(1)]
    omegas, Ts = [], []
    for _ in range(n_max + 1):
        num = sum((coeffs[i] * coeffs[i + 1].conjugate() for i in range(len(coeffs) - 1)), Fraction(0))
        den = sum((c * c.conjugate() for c in coeffs), Fraction(0))
        omega = num / den
        T = (omega + rho) / (rho * omega.conjugate() + 1)
        omegas.append(omega)
        Ts.append(T)
        # multiply by (T - z)
        nxt = [T * c for c in coeffs] + [Fraction(0)]
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] - c
        coeffs = nxt
    return omegas, Ts


def haar_exact_Tn(rho, n_max: int) -> list:
    """Exact ``T_0..T_{n_max}``; raises :class:`IdentityViolation` unless ``T_n = rho^(2n+1)``."""
    rho = _exact(rho)
    _, Ts = haar_exact_sequence(rho, n_max)
    for n, T in enumerate(Ts):
        if T != rho ** (2 * n + 1):
            raise IdentityViolation(f"T_{n} = {T} differs from rho^{2 * n + 1} = {rho ** (2 * n + 1)}")
    return Ts


def limit_moments(rho: float, k_max: int, n: int) -> np.ndarray:
    """Haar-mode ``omega_{n,0..k_max}`` after ``n`` steps."""
    seq = evolve(haar_sequence(rho, k_max + n + 1), n)
    return np.array([seq.moment(n, k) for k in range(k_max + 1)])


@dataclass
class LadderRow:
    n: int
    beta: float
    u: float
    v: float
    q: float
    beta_bound: float


@dataclass
class LadderReport:
    d: int
    rho: float
    dps: int
    rows: List[LadderRow] = field(default_factory=list)
    beta0: float = 0.0

    @property
    def violations(self) -> list:
        rho = self.rho
        bad = []
        for row in self.rows:
            if row.n < 1:
                continue
            if row.beta > row.beta_bound or row.u > rho + 3 * rho**2 or row.v > 3 * rho**2:
                bad.append(row.n)
        return bad

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def final_q_gap(self) -> float:
        return abs(self.rows[-1].q - self.rho)


def underflow_horizon(rho: float) -> int:
    """Largest ``n`` with ``rho^(n+2)`` still a normal double."""
    return int(math.floor(math.log(sys.float_info.min) / math.log(rho))) - 2


def ladder_report(d: int, rho: float, n_max: Optional[int] = None, dps: Optional[int] = None) -> LadderReport:
    """Run Orthomin(1) on ``I + rho*diag(d-th roots of unity)`` from ``r_0 = ones`` and
    record ``|beta_n|``, ``|u_n| = |omega_{n,1}|``, ``|v_n| = |omega_{n,2}|`` and ``q_n``.

    ``beta_n = 1 - lambda_n`` shrinks like ``rho^(n+2)``, far below double
    rounding, so the solver runs on mpmath vectors with enough digits to
    resolve the bound at ``n_max`` (default: until it underflows a double).
    """
    if not 0 < rho < 0.1:
        raise ContractError(f"ladder hypotheses need 0 < rho < 0.1, got {rho}")
    if d < 4:
        raise ContractError(f"ladder hypotheses need d >= 4, got {d}")
    n_max = underflow_horizon(rho) if n_max is None else n_max
    if dps is None:
        dps = int(math.ceil((n_max + 2) * -math.log10(rho))) + 30
    report = LadderReport(d=d, rho=rho, dps=dps)
    with mpmath.workdps(dps):
        r = mpmath.mpf(rho)
        zeta = np.array([mpmath.expjpi(mpmath.mpf(2 * k) / d) for k in range(d)], dtype=object)
        A = DiagonalOperator(np.array([1 + r * z for z in zeta], dtype=object))
        ones = np.array([mpmath.mpc(1)] * d, dtype=object)
        state = init_state(A, ones, np.array([mpmath.mpc(0)] * d, dtype=object), 1)
        for n in range(n_max + 1):
            rn = state.r
            rr = inner(rn, rn).real
            u = abs(inner(zeta * rn, rn) / rr)
            v = abs(inner(zeta * zeta * rn, rn) / rr)
            state = step(state, A, breakdown_tol=0)
            beta = abs(1 - state.lam)
            q = norm(state.r) / rr ** 0.5
            if n == 0:
                report.beta0 = float(beta)
            report.rows.append(LadderRow(n=n, beta=float(beta), u=float(u), v=float(v), q=float(q),
                                         beta_bound=float(r ** (n + 2))))
    return report


def ladder_check(d: int, rho: float, n_max: Optional[int] = None) -> bool:
    """True iff ``|beta_n| <= rho^(n+2)``, ``|u_n| <= rho + 3rho^2``, ``|v_n| <= 3rho^2`` for ``1 <= n <= n_max``."""
    return ladder_report(d, rho, n_max).ok
