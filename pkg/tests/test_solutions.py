import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inversesquare import (
    CouplingPoint,
    CutPlanePoint,
    InvalidArgumentError,
    RadialGridFunction,
    UnsupportedParameterError,
    a_sol,
    b_sol,
    u_kappa,
    u_theta,
    v_sol,
    wronskian_ab,
    wronskian_numeric,
)
from inversesquare.solutions import derivative, gauss_legendre_panels, wronskian_u
from inversesquare.verify import kappa_evenness
import oracles

PI = math.pi


@pytest.mark.parametrize("alpha", [-2.5, -1.0, -0.2, 0.0, 3e-5, -7e-5, 0.25, 0.5, 0.81])
@pytest.mark.parametrize("z", [1.0, -1.0, 2 + 1j, 0.3j, -5 + 0.2j])
def test_u_theta_against_mpmath(alpha, z):
    for theta in (0.0, PI / 2, 0.9):
        for r in (0.05, 0.8, 3.0):
            got = u_theta(CouplingPoint(alpha, theta), z, r)
            exp = complex(oracles.u_theta(alpha, theta, z, r))
            assert abs(got - exp) <= 1e-9 * max(1.0, abs(exp)), (theta, r)


@pytest.mark.parametrize("alpha", [-1.0, -0.3, 0.0, 0.25, 0.6])
@pytest.mark.parametrize("z", [1.0, -1.0, 1j, -3 + 0.01j, 4 - 0.5j, 2.0 + 2.0j])
def test_v_against_mpmath(alpha, z):
    for r in (0.1, 1.0, 2.5, 7.0, 20.0):
        got = v_sol(alpha, z, r)
        exp = complex(oracles.v_weyl(alpha, z, r))
        assert abs(got - exp) <= 1e-9 * abs(exp), r


def test_u_kappa_is_power_times_entire():
    r = np.array([0.5, 1.0, 2.0])
    assert np.allclose(u_kappa(0.4, 0.0, r), r**0.9 * 2**-0.4 / math.gamma(1.4), rtol=1e-14)


def test_a_at_zero_energy():
    # at z = 0 the solutions are r**(1/2 +- kappa); alpha = 0 gives 2 sqrt(r) (ln(r/2) + gamma) limit form
    r = np.array([0.3, 1.0, 4.0])
    exp = 2 * np.sqrt(r) * (np.log(r / 2) + 0.5772156649015329)
    assert np.allclose(a_sol(0.0, 0.0, r), exp, rtol=1e-14)
    assert np.allclose(b_sol(0.0, 0.0, r), PI * np.sqrt(r), rtol=1e-14)


def test_continuity_in_alpha_through_zero():
    r = np.linspace(0.2, 3, 9)
    for fn in (a_sol, b_sol):
        f0 = fn(0.0, 1 + 1j, r)
        for a in (1e-9, -1e-9, 5e-5, -5e-5, 1.5e-4, -1.5e-4):
            assert np.max(np.abs(fn(a, 1 + 1j, r) - f0)) < 3 * abs(a) * np.max(np.abs(f0)) + 1e-12


def test_evenness_in_kappa():
    r = np.linspace(0.1, 5, 11)
    for alpha in (0.3, -0.7, 0.81):
        assert kappa_evenness(alpha, 2 - 1j, r) < 1e-12


def test_closed_form_wronskians():
    assert wronskian_ab(0.0) == pytest.approx(-2 * PI)
    assert wronskian_ab(1.0) == pytest.approx(0.0, abs=1e-15)
    assert wronskian_u(0.5) == pytest.approx(-2 / PI)


@settings(max_examples=25, deadline=None)
@given(st.floats(-3, 0.95), st.floats(-PI, PI), st.floats(-3, 3), st.floats(-3, 3))
def test_boundary_wronskian_is_constant(alpha, theta, zr, zi):
    z = complex(zr, zi)
    radii = np.exp(np.linspace(math.log(0.3), math.log(2.0), 401))
    u0 = RadialGridFunction(radii, u_theta(CouplingPoint(alpha, theta), z, radii))
    u1 = RadialGridFunction(radii, u_theta(CouplingPoint(alpha, theta + PI / 2), z, radii))
    w = wronskian_numeric(u0, u1).values
    exact = wronskian_ab(alpha)
    assert np.max(np.abs(w - exact)) <= 1e-7 * max(abs(exact), np.max(np.abs(u0.values)) ** 2)


def test_v_rejects_integer_order():
    with pytest.raises(UnsupportedParameterError):
        v_sol(1.0, 1j, 1.0)


def test_v_accepts_cut_plane_point():
    p = CutPlanePoint(2.0, PI)
    assert v_sol(-0.5, p, 1.3) == pytest.approx(complex(oracles.v_weyl(-0.5, -2.0 + 0j, 1.3)), rel=1e-12)


def test_radii_validation():
    with pytest.raises(InvalidArgumentError):
        a_sol(0.1, 1.0, np.array([1.0, -1.0]))
    with pytest.raises(InvalidArgumentError):
        a_sol(np.nan, 1.0, 1.0)


def test_derivative_orders():
    r = np.linspace(1.0, 2.0, 201)
    f = RadialGridFunction(r, np.sin(3 * r))
    x, d, _ = derivative(f)
    assert np.max(np.abs(d - 3 * np.cos(3 * x))) < 1e-10
    rl = np.exp(np.linspace(0, 1, 201))
    x, d, _ = derivative(RadialGridFunction(rl, rl**3))
    assert np.max(np.abs(d - 3 * x**2)) < 1e-10


def test_gauss_legendre_grid_integrates_polynomials():
    x, w = gauss_legendre_panels(1.0, 2.0, 4, 8)
    assert np.sum(w * x**9) == pytest.approx((2**10 - 1) / 10, rel=1e-14)
    g = RadialGridFunction.gauss_legendre(np.exp, 1e-9, 1.0, 2, 16)
    assert np.sum(g.quadrature_weights() * g.values) == pytest.approx(math.e - math.exp(1e-9), rel=1e-14)


def test_uniform_grid_weights_are_trapezoid():
    g = RadialGridFunction.uniform(lambda r: r, 1.0, 3.0, 5)
    assert np.allclose(g.quadrature_weights(), [0.25, 0.5, 0.5, 0.5, 0.25])


def test_free_case_reduces_to_sine_and_cosine():
    # alpha = 1/4 removes the potential: theta = pi/4 is the Dirichlet solution, -pi/4 the Neumann one
    r = np.linspace(0.1, 6, 13)
    c = 2 * math.sqrt(2 / PI)
    for z in (2.0, -1.5, 1 + 2j):
        k = np.sqrt(complex(z))
        dirichlet = u_theta(CouplingPoint(0.25, PI / 4), z, r)
        neumann = u_theta(CouplingPoint(0.25, -PI / 4), z, r)
        assert dirichlet == pytest.approx(c * np.sin(k * r) / k, rel=1e-12)
        assert neumann == pytest.approx(-c * np.cos(k * r), rel=1e-12)


def test_numeric_wronskian_examples():
    r = np.linspace(1.0, 2.0, 5)
    f = RadialGridFunction(r, r)
    g = RadialGridFunction(r, np.ones_like(r))
    assert wronskian_numeric(f, g).values == pytest.approx([-1.0])
    assert np.all(wronskian_numeric(f, f).values == 0)
    with pytest.raises(InvalidArgumentError):
        wronskian_numeric(f, RadialGridFunction(r + 0.1, r))
    with pytest.raises(InvalidArgumentError):
        wronskian_numeric(RadialGridFunction(r[:4], r[:4]), RadialGridFunction(r[:4], r[:4]))
    rl = np.exp(np.linspace(math.log(0.3), math.log(3.0), 301))
    w = wronskian_numeric(RadialGridFunction(rl, a_sol(0.0, 0.0, rl)), RadialGridFunction(rl, b_sol(0.0, 0.0, rl)))
    assert w.values == pytest.approx(-2 * PI, rel=1e-9)


def test_wronskian_ab_negative_alpha():
    assert wronskian_ab(-1.0) == pytest.approx(-2 * math.sinh(PI) ** 2 / PI, rel=1e-14)


def test_weyl_normalisation_against_u_kappa():
    r = np.exp(np.linspace(math.log(0.5), math.log(2.0), 401))
    w = wronskian_numeric(RadialGridFunction(r, v_sol(0.25, 1.0, r)), RadialGridFunction(r, u_kappa(0.5, 1.0, r)))
    assert w.values == pytest.approx(np.exp(1j * PI / 4), rel=1e-10)


def test_weyl_solution_decays():
    r = np.linspace(10, 20, 41)
    mag = np.abs(v_sol(0.25, 1j, r))
    assert np.all(np.diff(mag) < 0)


def test_weyl_near_integer_order_rejected():
    with pytest.raises(UnsupportedParameterError):
        v_sol((2 + 5e-7) ** 2, 1j, 1.0)
    assert np.isfinite(v_sol((2 + 1e-5) ** 2, 1j, 1.0))
