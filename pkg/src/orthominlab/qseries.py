"""q-Pochhammer symbols, Gaussian binomials and the product polynomial
``Phi_n(X, q) = prod_{k=1..n} (X - q^(2k-1))``, with numeric checks of the
identities that tie them together.

Every function works over any scalar type with ring arithmetic: ``float``,
``complex``, :class:`fractions.Fraction` or
:class:`~orthominlab.exact.ExactComplex`. Exact inputs give exact results.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

from .exact import ExactComplex


class DegenerateQError(ZeroDivisionError):
    """A Gaussian binomial denominator vanished (q a low-order root of unity)."""


def q_pochhammer(x, q, n: int):
    """``(x; q)_n = prod_{i=1..n} (1 - x q^(i-1))``; the empty product is 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1
    qi = 1
    for _ in range(n):
        out = out * (1 - x * qi)
        qi = qi * q
    return out


def q_binomial(m: int, n: int, q):
    """Gaussian binomial ``(q;q)_m / ((q;q)_n (q;q)_(m-n))``.

    Evaluated as ``prod_{i=1..n} (1 - q^(m-n+i)) / (1 - q^i)``, which avoids
    the large cancelling Pochhammer quotients.
    """
    if not 0 <= n <= m:
        return 0
    n = min(n, m - n)
    num = den = q ** 0  # keeps the scalar type: int/int would fall back to float
    for i in range(1, n + 1):
        num = num * (1 - q ** (m - n + i))
        den = den * (1 - q ** i)
    if den == 0:
        raise DegenerateQError(f"q is a root of unity of order <= {n}; [{m} choose {n}]_q is undefined")
    return num / den


def phi_polynomial(n: int, q) -> List:
    """Ascending coefficients ``a_0..a_n`` of ``Phi_n(X, q)``; monic."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    coeffs = [1]
    for k in range(1, n + 1):
        root = q ** (2 * k - 1)
        # multiply by (X - root)
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - root * c
        coeffs = nxt
    return coeffs


def coefficient_sums(n: int, q) -> tuple:
    """``(sum a_i^2, sum a_i a_(i+1))`` over the coefficients of ``Phi_n``."""
    a = phi_polynomial(n, q)
    sum_sq = sum((c * c for c in a), 0)
    sum_adj = sum((a[i] * a[i + 1] for i in range(len(a) - 1)), 0)
    return sum_sq, sum_adj


def phi_ratio_identity_check(n: int, q) -> tuple:
    """Return ``(sum a_i a_(i+1) / sum a_i^2,  -q (1 - q^(2n)) / (1 - q^(2n+2)))``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    den = 1 - q ** (2 * n + 2)
    if den == 0:
        raise ValueError("|q| = 1 makes the closed form degenerate")
    sum_sq, sum_adj = coefficient_sums(n, q)
    return sum_adj / sum_sq, -q * (1 - q ** (2 * n)) / den


def macmahon_check(m: int, n: int, q, z) -> tuple:
    """Both sides of ``(zq; q)_m (1/z; q)_n = sum_{k=-n..m} (-1)^k q^(k(k+1)/2) z^k [m+n, n+k]_q``."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    if z == 0:
        raise ValueError("z must be nonzero")
    lhs = q_pochhammer(z * q, q, m) * q_pochhammer(1 / z, q, n)
    rhs = 0
    for k in range(-n, m + 1):
        term = q ** (k * (k + 1) // 2) * z ** k * q_binomial(m + n, n + k, q)
        rhs = rhs + (term if k % 2 == 0 else -term)
    return lhs, rhs


@dataclass
class Laurent:
    """Laurent polynomial ``sum_i coeffs[i] x^(offset + i)``."""

    offset: int
    coeffs: list

    def __mul__(self, other: "Laurent") -> "Laurent":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Laurent(self.offset + other.offset, out)

    def coeff(self, power: int):
        i = power - self.offset
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0


def finite_jacobi_check(n: int, q):
    """Largest coefficient discrepancy in
    ``Phi_n(x) Phi_n(1/x) = sum_{k=-n..n} (-1)^k q^(k^2) x^k [2n, n+k]_(q^2)``.

    Exact scalars give an exact discrepancy (0 when the identity holds).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    a = phi_polynomial(n, q)
    left = Laurent(0, a) * Laurent(-n, a[::-1])
    q2 = q * q
    worst = 0
    for k in range(-n, n + 1):
        right = q ** (k * k) * q_binomial(2 * n, n + k, q2)
        if k % 2:
            right = -right
        diff = left.coeff(k) - right
        # ExactComplex has no exact modulus; the larger part is exact and vanishes with it
        err = max(abs(diff.re), abs(diff.im)) if isinstance(diff, ExactComplex) else abs(diff)
        if err > worst:
            worst = err
    return worst


def jacobi_triple_product_check(rho: float, z: complex, K: int) -> tuple:
    """Truncations at order ``K`` of both sides of
    ``prod_{k>=1} |z - rho^(2k-1)|^2 = (rho^2; rho^2)_inf^(-1) sum_k (-1)^k rho^(k^2) z^k``.

    Returns ``(lhs, rhs)`` as real numbers; raises if the right side is not
    real to within rounding. See :func:`triple_product_tail` for the error scale.
    """
    if not 0 <= rho < 1:
        raise ValueError("need 0 <= rho < 1")
    if abs(abs(z) - 1) > 1e-12:
        raise ValueError("z must lie on the unit circle")
    lhs = 1.0
    for k in range(1, K + 1):
        lhs *= abs(z - rho ** (2 * k - 1)) ** 2
    series = sum((-1) ** k * rho ** (k * k) * z ** k for k in range(-K, K + 1))
    rhs = complex(series) / q_pochhammer(rho * rho, rho * rho, K)
    if abs(rhs.imag) > 1e-12 * max(1.0, abs(rhs)):
        raise ArithmeticError(f"triple-product series has nonvanishing imaginary part {rhs.imag:.3e}")
    return lhs, rhs.real


def triple_product_tail(rho: float, K: int) -> float:
    """Geometric scale ``rho^(2K)`` of the truncation error in the triple product."""
    return rho ** (2 * K)
