import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orthominlab.diagnostics import estimate_rate
from orthominlab.orthomin import StoppingRule, solve
from orthominlab.spectra import (
    SpectrumError,
    SpectrumSpec,
    arc_angles,
    arc_system,
    ellipse_level,
    ellipse_points,
    ellipse_system,
    pde_circle_center,
    pde_eigenvalues,
    pde_system,
    perturbed_angles,
    perturbed_roots,
    roots_of_unity,
    roots_of_unity_system,
    unit_part,
)


def test_roots_of_unity_examples():
    np.testing.assert_allclose(roots_of_unity_system(4, 0.5).entries, [1.5, 1 + 0.5j, 0.5, 1 - 0.5j], atol=1e-15)
    A = roots_of_unity_system(13, 0.8)
    _, trace = solve(A, np.ones(13), stop=StoppingRule(max_iters=1))
    assert round(trace.q_values[0], 4) == 0.6247
    A1 = roots_of_unity_system(1, 0.3)
    assert A1.entries[0] == 1.3
    _, trace = solve(A1, np.ones(1), stop=StoppingRule(max_iters=5))
    assert trace.status == "converged" and len(trace) == 2


def test_roots_of_unity_rejects_enclosing_spectrum():
    with pytest.raises(SpectrumError):
        roots_of_unity_system(4, 1.0)
    with pytest.raises(SpectrumError):
        roots_of_unity_system(4, 0.0)
    with pytest.raises(SpectrumError):
        roots_of_unity_system(4, 2.0, z0=1.5j)
    with pytest.raises(SpectrumError):
        roots_of_unity(0)
    # complex centres are fine
    assert np.allclose(unit_part(roots_of_unity_system(5, 1.0, z0=2j), 1.0, 2j), roots_of_unity(5))


def test_ellipse_circle_degenerate_case():
    pts = ellipse_points(8, 0.5, 0.5, 0.0, 1.0)
    # j = 1..d runs the same points as j = 0..d-1, rotated by one index
    np.testing.assert_allclose(np.roll(pts, 1), roots_of_unity_system(8, 0.5).entries, atol=1e-15)


def test_ellipse_two_points():
    pts = ellipse_points(2, 2.0, 1.0, 0.3, 5.0)
    np.testing.assert_allclose(pts, [5 - 2 * np.exp(0.3j), 5 + 2 * np.exp(0.3j)], atol=1e-14)


def test_ellipse_rejects_origin_inside_or_on():
    with pytest.raises(SpectrumError, match="inside"):
        ellipse_system(16, 2.0, 1.0, 0.0, 0.5)
    with pytest.raises(SpectrumError, match="on"):
        ellipse_system(16, 2.0, 1.0, 0.0, 2.0)
    with pytest.raises(SpectrumError):
        ellipse_system(16, -1.0, 1.0, 0.0, 5.0)


def test_ellipse_experiment_rate():
    # major axis at 60 degrees from the real axis; see README for the angle convention
    A = ellipse_system(128, 2.0, 1.0, math.pi / 3, 2 + 1j)
    _, trace = solve(A, np.ones(128), k=2, stop=StoppingRule(max_iters=400))
    assert abs(estimate_rate(trace, 20).limit - 0.6891227) < 1e-3


def test_ellipse_literal_pi_over_six_rate():
    # theta = pi/6 taken literally rotates the alpha axis 30 degrees: a different ellipse
    A = ellipse_system(128, 2.0, 1.0, math.pi / 6, 2 + 1j)
    _, trace = solve(A, np.ones(128), k=2, stop=StoppingRule(max_iters=400))
    assert abs(estimate_rate(trace, 20).limit - 0.8184248) < 1e-5


@given(st.integers(1, 64), st.floats(0.1, 5), st.floats(0.1, 5), st.floats(-4, 4),
       st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))
def test_ellipse_points_on_curve(d, a, b, theta, u):
    assert np.allclose(ellipse_level(ellipse_points(d, a, b, theta, u), a, b, theta, u), 1.0, atol=1e-12)


def test_pde_examples():
    d, a, b, c = 4, 1.0, 1.0, 1.0
    h = math.pi / 2
    want = [c, -2 * a / h**2 * 0 + 1j * b / h + c + 2 * a / h**2, 4 * a / h**2 + c, -1j * b / h + c + 2 * a / h**2]
    np.testing.assert_allclose(pde_eigenvalues(d, a, b, c), want, atol=1e-14)
    with pytest.raises(SpectrumError, match="singular"):
        pde_system(16, 1.0, 0.0, 0.0)
    with pytest.raises(SpectrumError):
        pde_system(2, 1.0, 1.0, 1.0)
    with pytest.raises(SpectrumError):
        pde_system(8, 0.0, 1.0, 1.0)
    with pytest.raises(SpectrumError):
        pde_system(8, 1.0, 1.0, -1.0)


@given(st.integers(3, 200), st.floats(0.01, 10), st.floats(0.01, 10))
def test_pde_circle_case(d, a, c):
    h = 2 * math.pi / d
    b = 2 * a / h
    lam = pde_system(d, a, b, c).entries
    centre = pde_circle_center(d, a, c)
    radius = np.abs(lam - centre)
    assert np.allclose(radius, b / h, rtol=1e-12)


def test_arc_examples():
    ang = arc_angles(5, 1.0)
    assert np.all(np.abs(ang) < 1.0)
    np.testing.assert_allclose(np.diff(ang), 2 / 6)
    np.testing.assert_allclose(ang, -ang[::-1], atol=1e-15)
    assert arc_system(1, 0.5, 2.0).d == 1
    assert arc_angles(1, 2.0)[0] == 0
    with pytest.raises(SpectrumError):
        arc_system(4, 0.5, math.pi)
    with pytest.raises(SpectrumError):
        arc_system(4, 1.2, 1.0)


def test_arc_hypothesis_keeps_minus_rho_outside():
    rho = 0.9
    h = math.pi - math.acos(rho) - 0.01
    zeta = unit_part(arc_system(15, rho, h), rho)
    assert np.all(zeta.real > -rho)


def test_perturbed_roots():
    np.testing.assert_array_equal(perturbed_roots(9, 0.5, 3, 0.0).entries, roots_of_unity_system(9, 0.5).entries)
    a = perturbed_roots(13, 0.8, 7, 0.05).entries
    b = perturbed_roots(13, 0.8, 7, 0.05).entries
    assert np.array_equal(a, b)
    assert not np.array_equal(a, perturbed_roots(13, 0.8, 8, 0.05).entries)
    eta = perturbed_angles(13, 7, 0.05) - 2 * np.pi * np.arange(13) / 13
    assert np.all(np.abs(eta) <= 0.05)
    with pytest.raises(SpectrumError):
        perturbed_angles(4, 0, -1.0)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_perturbed_roots_still_converge_to_rho(seed):
    A = perturbed_roots(13, 0.8, seed, 0.05)
    _, trace = solve(A, np.ones(13), k=1, stop=StoppingRule(max_iters=200))
    assert abs(estimate_rate(trace).limit - 0.8) < 1e-3


@given(st.integers(1, 40), st.floats(0.01, 0.99), st.integers(0, 10**6), st.floats(0, 1))
def test_unit_parts_have_modulus_one(d, rho, seed, jitter):
    for zeta in (roots_of_unity(d), unit_part(perturbed_roots(d, rho, seed, jitter), rho),
                 np.exp(1j * arc_angles(d, 1.0))):
        assert np.allclose(np.abs(zeta), 1.0, atol=1e-15)


SPECS = [
    SpectrumSpec(kind="unit_circle_roots", d=13, rho=0.8),
    SpectrumSpec(kind="unit_circle_roots", d=5, rho=0.3, z0=1 + 1j),
    SpectrumSpec(kind="perturbed_circle", d=7, rho=0.4, seed=3, jitter=0.1),
    SpectrumSpec(kind="ellipse", d=32, alpha=2.0, beta=1.0, theta=0.5, u=2 + 1j),
    SpectrumSpec(kind="pde", d=16, a=1.0, b=3.0, c=0.5),
    SpectrumSpec(kind="arc", d=15, rho=0.9, half_angle=2.0),
    SpectrumSpec(kind="explicit", mu=[1 + 1j, 2, -3j]),
]


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.kind)
def test_spec_json_roundtrip(spec):
    back = SpectrumSpec.from_json(spec.to_json())
    assert back.to_dict() == spec.to_dict()
    np.testing.assert_array_equal(back.build().entries, spec.build().entries)


def test_spec_json_field_names():
    d = SPECS[1].to_dict()
    assert d == {"kind": "unit_circle_roots", "d": 5, "rho": 0.3, "z0_re": 1.0, "z0_im": 1.0}
    assert SPECS[-1].to_dict()["mu"] == [[1.0, 1.0], [2.0, 0.0], [0.0, -3.0]]


def test_spec_validation():
    with pytest.raises(SpectrumError):
        SpectrumSpec(kind="hexagon")
    with pytest.raises(SpectrumError, match="missing"):
        SpectrumSpec(kind="ellipse", d=3)
    with pytest.raises(SpectrumError, match="unknown"):
        SpectrumSpec.from_dict({"kind": "unit_circle_roots", "d": 3, "rho": 0.5, "colour": 1})
    with pytest.raises(SpectrumError):
        SpectrumSpec.from_dict({"kind": "unit_circle_roots", "d": 3.5, "rho": 0.5})
    with pytest.raises(SpectrumError, match="singular"):
        SpectrumSpec(kind="explicit", mu=[1, 0]).build()


def test_unit_circle_part():
    assert np.allclose(SPECS[0].unit_circle_part(), roots_of_unity(13))
    assert SPECS[3].unit_circle_part() is None
    arc = SPECS[5]
    assert np.allclose(1 + arc.rho * arc.unit_circle_part(), arc.build().entries)
