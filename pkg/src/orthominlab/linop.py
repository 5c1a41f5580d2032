"""Complex vector arithmetic and the operator-application contract.

Vectors are one-dimensional numpy arrays. The solver path uses ``complex128``;
object arrays holding :mod:`mpmath` numbers are also accepted everywhere, which
is how extended-precision runs reuse the same code.
"""

from __future__ import annotations

import numpy as np


class DimensionError(ValueError):
    """Raised when vector or operator dimensions disagree."""


def as_vector(v, dtype=complex) -> np.ndarray:
    """Return ``v`` as a fresh one-dimensional array (default ``complex128``)."""
    arr = np.array(v, dtype=dtype)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise DimensionError(f"expected a nonempty 1-d vector, got shape {arr.shape}")
    return arr


def _check_same_length(u: np.ndarray, v: np.ndarray) -> None:
    if u.shape != v.shape:
        raise DimensionError(f"length mismatch: {u.shape[0]} vs {v.shape[0]}")


def inner(u: np.ndarray, v: np.ndarray):
    """Inner product ``sum(u_j * conj(v_j))``; the second argument is conjugated."""
    _check_same_length(u, v)
    return np.sum(u * np.conj(v))


def norm(v: np.ndarray):
    """Euclidean norm ``sqrt(inner(v, v))``.

    Float vectors are scaled by their largest modulus first so that tiny or
    huge entries neither underflow nor overflow when squared.
    """
    if v.dtype == object:
        return inner(v, v).real ** 0.5
    a = np.abs(v)
    s = a.max()
    if s == 0 or not np.isfinite(s):
        return float(s)
    return float(s * np.sqrt(np.sum((a / s) ** 2)))


def axpy(alpha, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Return ``y + alpha * x`` as a new vector."""
    _check_same_length(x, y)
    return y + alpha * x


class LinearOperator:
    """An operator on C^d that can be applied to vectors."""

    d: int

    def apply(self, v: np.ndarray) -> np.ndarray:
        if v.shape != (self.d,):
            raise DimensionError(f"operator of dimension {self.d} applied to vector of shape {v.shape}")
        return self._apply(v)

    def __call__(self, v: np.ndarray) -> np.ndarray:
        return self.apply(v)

    def _apply(self, v: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_dense(self) -> np.ndarray:
        return np.column_stack([self.apply(e) for e in np.eye(self.d, dtype=complex)])

    def opnorm(self) -> float:
        """Spectral (2-)norm."""
        return float(np.linalg.norm(self.to_dense(), 2))


class DiagonalOperator(LinearOperator):
    """``diag(entries)``; the form every spectral test problem takes."""

    def __init__(self, entries):
        self.entries = as_vector(entries, dtype=object if _is_object(entries) else complex)
        self.d = self.entries.shape[0]

    def _apply(self, v):
        return self.entries * v

    def to_dense(self):
        return np.diag(self.entries.astype(complex))

    def opnorm(self):
        return float(np.max(np.abs(self.entries.astype(complex))))

    def __repr__(self):
        return f"DiagonalOperator(d={self.d})"


class DenseOperator(LinearOperator):
    """Row-major dense matrix."""

    def __init__(self, rows):
        self.matrix = np.array(rows, dtype=complex)
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise DimensionError(f"dense operator must be square, got shape {self.matrix.shape}")
        self.d = self.matrix.shape[0]

    def _apply(self, v):
        return self.matrix @ v

    def to_dense(self):
        return self.matrix.copy()

    def __repr__(self):
        return f"DenseOperator(d={self.d})"


class ShiftOperator(LinearOperator):
    """Truncated ``z0*I + rho*S`` where ``S`` shifts coefficients up by one.

    In the monomial basis of L^2 on the unit circle, multiplication by ``z``
    is the shift ``S``. Truncating to ``d`` coefficients drops the top one,
    so results are exact only while the top coefficient of the input is zero.
    """

    def __init__(self, d: int, rho, z0=1.0):
        if d < 1:
            raise DimensionError("dimension must be at least 1")
        self.d = d
        self.rho = rho
        self.z0 = z0

    def _apply(self, v):
        shifted = np.zeros_like(v)
        shifted[1:] = v[:-1]
        return self.z0 * v + self.rho * shifted

    def __repr__(self):
        return f"ShiftOperator(d={self.d}, rho={self.rho}, z0={self.z0})"


def _is_object(values) -> bool:
    arr = np.asarray(values)
    return arr.dtype == object
