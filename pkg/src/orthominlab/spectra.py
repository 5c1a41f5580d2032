"""Diagonal test problems: circle, arc, ellipse and periodic-PDE spectra.

Every generator returns a :class:`~orthominlab.linop.DiagonalOperator`. Orthomin
residual norms are invariant under unitary changes of basis, so a normal
operator is fully represented by its eigenvalues.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields
from typing import Optional

import numpy as np

from .linop import DiagonalOperator


class SpectrumError(ValueError):
    """Parameters give a singular operator or violate a generator's hypotheses."""


def _unit(angles) -> np.ndarray:
    return np.exp(1j * np.asarray(angles, dtype=float))


def _check_nonsingular(mu: np.ndarray, what: str) -> None:
    if np.any(mu == 0):
        raise SpectrumError(f"{what}: zero eigenvalue, operator is singular")


def roots_of_unity(d: int) -> np.ndarray:
    """``exp(2*pi*i*j/d)`` for ``j = 0..d-1``."""
    if d < 1:
        raise SpectrumError("d must be at least 1")
    return _unit(2 * np.pi * np.arange(d) / d)


def roots_of_unity_system(d: int, rho: float, z0: complex = 1.0) -> DiagonalOperator:
    """``z0*I + rho*diag(1, zeta_d, ..., zeta_d^(d-1))``."""
    if not 0 < rho < abs(z0):
        raise SpectrumError(f"need 0 < rho < |z0|, got rho={rho}, |z0|={abs(z0)}: spectrum may enclose the origin")
    mu = z0 + rho * roots_of_unity(d)
    _check_nonsingular(mu, "roots_of_unity_system")
    return DiagonalOperator(mu)


def ellipse_points(d: int, alpha: float, beta: float, theta: float, u: complex) -> np.ndarray:
    """``u + exp(i*theta) * (alpha*cos(g_j) + i*beta*sin(g_j))`` at ``g_j = 2*pi*j/d``, ``j = 1..d``.

    Points are equally spaced in the parameter ``g``, not in arc length.
    """
    g = 2 * np.pi * np.arange(1, d + 1) / d
    return u + np.exp(1j * theta) * (alpha * np.cos(g) + 1j * beta * np.sin(g))


def ellipse_level(z, alpha: float, beta: float, theta: float, u: complex):
    """``(x/alpha)^2 + (y/beta)^2`` in the ellipse's own frame; 1 on the curve, < 1 inside."""
    w = np.exp(-1j * theta) * (np.asarray(z) - u)
    return (w.real / alpha) ** 2 + (w.imag / beta) ** 2


def ellipse_system(d: int, alpha: float, beta: float, theta: float, u: complex) -> DiagonalOperator:
    if d < 1:
        raise SpectrumError("d must be at least 1")
    if alpha <= 0 or beta <= 0:
        raise SpectrumError("semi-axes must be positive")
    level = float(ellipse_level(0.0, alpha, beta, theta, u))
    if level <= 1.0:
        where = "on" if level == 1.0 else "inside"
        raise SpectrumError(
            f"origin lies {where} the ellipse (normalized level {level:.6g} <= 1); "
            "the field of values would contain 0"
        )
    return DiagonalOperator(ellipse_points(d, alpha, beta, theta, u))


def pde_eigenvalues(d: int, a: float, b: float, c: float) -> np.ndarray:
    """Eigenvalues of the centered-difference periodic ``-a u'' + b u' + c u`` on ``[0, 2*pi]``."""
    h = 2 * np.pi / d
    kh = np.arange(d) * h
    return -2 * a / h**2 * np.cos(kh) + 1j * b / h * np.sin(kh) + c + 2 * a / h**2


def pde_system(d: int, a: float, b: float, c: float) -> DiagonalOperator:
    if d < 3:
        raise SpectrumError("d must be at least 3")
    if a <= 0:
        raise SpectrumError("diffusion coefficient a must be positive")
    if c < 0:
        raise SpectrumError("reaction coefficient c must be nonnegative")
    lam = pde_eigenvalues(d, a, b, c)
    scale = 4 * a / (2 * np.pi / d) ** 2 + abs(c) + abs(b) * d
    small = np.abs(lam) <= 1e-14 * scale
    if np.any(small):
        raise SpectrumError(f"pde_system: eigenvalue(s) at index {np.flatnonzero(small).tolist()} vanish, system is singular")
    return DiagonalOperator(lam)


def arc_angles(d: int, half_angle: float) -> np.ndarray:
    """``d`` angles equally spaced strictly inside ``(-half_angle, half_angle)``."""
    return -half_angle + 2 * half_angle * np.arange(1, d + 1) / (d + 1)


def arc_system(d: int, rho: float, half_angle: float) -> DiagonalOperator:
    """``I + rho*diag(exp(i*theta_j))`` with ``theta_j`` from :func:`arc_angles`.

    If ``half_angle < pi - arccos(rho)`` every ``Re(exp(i*theta_j)) > -rho``, so
    ``-rho`` lies outside the hull of the unit-circle points.
    """
    if d < 1:
        raise SpectrumError("d must be at least 1")
    if not 0 < half_angle < np.pi:
        raise SpectrumError("need 0 < half_angle < pi")
    if not 0 < rho < 1:
        raise SpectrumError("need 0 < rho < 1")
    return DiagonalOperator(1 + rho * _unit(arc_angles(d, half_angle)))


def perturbed_angles(d: int, seed: int, jitter: float) -> np.ndarray:
    if jitter < 0:
        raise SpectrumError("jitter must be nonnegative")
    # PCG64 through default_rng: a fixed 64-bit generator, portable across platforms
    eta = np.random.default_rng(seed).uniform(-jitter, jitter, size=d)
    return 2 * np.pi * np.arange(d) / d + eta


def perturbed_roots(d: int, rho: float, seed: int, jitter: float) -> DiagonalOperator:
    """Roots of unity moved along the circle by seeded uniform angle noise."""
    if d < 1:
        raise SpectrumError("d must be at least 1")
    if not 0 < rho < 1:
        raise SpectrumError("need 0 < rho < 1")
    mu = 1 + rho * _unit(perturbed_angles(d, seed, jitter))
    _check_nonsingular(mu, "perturbed_roots")
    return DiagonalOperator(mu)


def unit_part(op: DiagonalOperator, rho: float, z0: complex = 1.0) -> np.ndarray:
    """Recover ``zeta`` from ``mu = z0 + rho*zeta``."""
    return (op.entries - z0) / rho


KINDS = ("unit_circle_roots", "perturbed_circle", "ellipse", "pde", "arc", "explicit")


@dataclass
class SpectrumSpec:
    """Serializable description of a test spectrum.

    Only the fields a kind uses are meaningful; JSON output carries exactly those.
    """

    kind: str
    d: Optional[int] = None
    rho: Optional[float] = None
    z0: complex = 1.0
    alpha: Optional[float] = None
    beta: Optional[float] = None
    theta: Optional[float] = None
    u: Optional[complex] = None
    a: Optional[float] = None
    b: Optional[float] = None
    c: Optional[float] = None
    half_angle: Optional[float] = None
    seed: Optional[int] = None
    jitter: Optional[float] = None
    mu: list = field(default_factory=list)

    _FIELDS = {
        "unit_circle_roots": ("d", "rho", "z0"),
        "perturbed_circle": ("d", "rho", "z0", "seed", "jitter"),
        "ellipse": ("d", "alpha", "beta", "theta", "u"),
        "pde": ("d", "a", "b", "c"),
        "arc": ("d", "rho", "half_angle"),
        "explicit": ("mu",),
    }

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpectrumError(f"unknown spectrum kind {self.kind!r}; expected one of {KINDS}")
        missing = [f for f in self._FIELDS[self.kind] if getattr(self, f) is None]
        if missing:
            raise SpectrumError(f"{self.kind} spectrum missing fields {missing}")
        if self.kind == "perturbed_circle" and self.z0 != 1:
            raise SpectrumError("perturbed_circle supports z0 = 1 only")

    def build(self) -> DiagonalOperator:
        if self.kind == "unit_circle_roots":
            return roots_of_unity_system(self.d, self.rho, self.z0)
        if self.kind == "perturbed_circle":
            return perturbed_roots(self.d, self.rho, self.seed, self.jitter)
        if self.kind == "ellipse":
            return ellipse_system(self.d, self.alpha, self.beta, self.theta, self.u)
        if self.kind == "pde":
            return pde_system(self.d, self.a, self.b, self.c)
        if self.kind == "arc":
            return arc_system(self.d, self.rho, self.half_angle)
        mu = np.array([complex(z) for z in self.mu])
        _check_nonsingular(mu, "explicit spectrum")
        return DiagonalOperator(mu)

    def unit_circle_part(self) -> Optional[np.ndarray]:
        """``zeta`` for circle-family kinds (``mu = z0 + rho*zeta``), else ``None``."""
        if self.kind == "unit_circle_roots":
            return roots_of_unity(self.d)
        if self.kind == "perturbed_circle":
            return _unit(perturbed_angles(self.d, self.seed, self.jitter))
        if self.kind == "arc":
            return _unit(arc_angles(self.d, self.half_angle))
        return None

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        for name in self._FIELDS[self.kind]:
            value = getattr(self, name)
            if name in ("z0", "u"):
                value = complex(value)
                out[f"{name}_re"] = value.real
                out[f"{name}_im"] = value.imag
            elif name == "mu":
                out["mu"] = [[complex(z).real, complex(z).imag] for z in value]
            else:
                out[name] = value
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "SpectrumSpec":
        data = dict(data)
        kwargs = {"kind": data.pop("kind")}
        for name in ("z0", "u"):
            re, im = data.pop(f"{name}_re", None), data.pop(f"{name}_im", None)
            if re is not None or im is not None:
                kwargs[name] = complex(re or 0.0, im or 0.0)
        if "mu" in data:
            kwargs["mu"] = [complex(re, im) for re, im in data.pop("mu")]
        unknown = set(data) - {f.name for f in fields(cls)}
        if unknown:
            raise SpectrumError(f"unknown spectrum fields {sorted(unknown)}")
        for key in ("d", "seed"):
            if key in data and data[key] is not None:
                if float(data[key]) != int(data[key]):
                    raise SpectrumError(f"{key} must be an integer")
                data[key] = int(data[key])
        kwargs.update(data)
        return cls(**kwargs)

    @classmethod
    def from_json(cls, text: str) -> "SpectrumSpec":
        return cls.from_dict(json.loads(text))


def pde_circle_center(d: int, a: float, c: float) -> float:
    h = 2 * math.pi / d
    return c + 2 * a / h**2
