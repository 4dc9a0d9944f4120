import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inversesquare import InvalidArgumentError, cos_entire, cos_entire_deriv, sinc_entire
from oracles import cos_oracle, sinc_oracle

moduli = st.floats(1e-6, 400.0)
angles = st.floats(-math.pi, math.pi)
reals = st.floats(-600.0, 600.0)


def polar(rho, ang):
    return rho * complex(math.cos(ang), math.sin(ang))


@pytest.mark.parametrize("zeta", [0, 1e-8, 0.5, -0.5, 1.0, -1.0, 1.0000001, 7.3, -40.0, 3 + 4j, -2j, 0.9j, 1e4 + 1e3j])
def test_against_mpmath(zeta):
    for fn, ref in ((cos_entire, cos_oracle), (sinc_entire, sinc_oracle)):
        got = complex(fn(zeta))
        exp = ref(zeta)
        assert abs(got - exp) <= 1e-14 * max(1.0, abs(exp))


def test_real_in_real_out():
    x = np.linspace(-50, 50, 101)
    assert cos_entire(x).dtype == np.float64
    assert sinc_entire(x).dtype == np.float64
    assert np.iscomplexobj(cos_entire(x + 0j))
    assert isinstance(cos_entire(2.0), float)


def test_known_values():
    assert cos_entire(math.pi**2) == pytest.approx(-1, abs=1e-15)
    assert sinc_entire(math.pi**2) == pytest.approx(0, abs=1e-15)
    assert sinc_entire(0.0) == 1.0
    assert cos_entire(-1.0) == pytest.approx(math.cosh(1.0), rel=1e-15)
    assert cos_entire_deriv(0.0) == -0.5


def test_continuous_at_series_switch():
    for direction in (1, -1, 1j, -1j, np.exp(0.7j)):
        inside = 1.0 * direction
        outside = (1.0 + 1e-12) * direction
        assert abs(cos_entire(inside) - cos_entire(outside)) < 1e-11
        assert abs(sinc_entire(inside) - sinc_entire(outside)) < 1e-11


@given(moduli, angles)
def test_quadruple_argument(rho, ang):
    z = polar(rho / 4, ang)
    lhs = sinc_entire(4 * z)
    rhs = sinc_entire(z) * cos_entire(z)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(sinc_entire(z)) * abs(cos_entire(z)))


@given(moduli, angles)
def test_pythagoras(rho, ang):
    z = polar(rho, ang)
    s, c = sinc_entire(z), cos_entire(z)
    scale = max(1.0, abs(z * s * s), abs(c * c))
    assert abs(z * s * s + c * c - 1) <= 1e-12 * scale


@given(reals)
def test_derivative_matches_mpmath(x):
    exp = float(mp.diff(lambda t: mp.cos(mp.sqrt(mp.mpc(t))).real, x))
    got = cos_entire_deriv(x)
    assert got == pytest.approx(exp, rel=1e-10, abs=1e-12 * max(1, math.cosh(math.sqrt(abs(x)))))


@settings(max_examples=50)
@given(st.floats(-30, 30), st.floats(-30, 30))
def test_conjugate_symmetry(a, b):
    z = complex(a, b)
    assert cos_entire(z.conjugate()) == pytest.approx(np.conj(cos_entire(z)), rel=1e-14, abs=1e-300)


@pytest.mark.parametrize("bad", [np.nan, np.inf, "x"])
def test_rejects_bad_input(bad):
    with pytest.raises(InvalidArgumentError):
        cos_entire(bad)


def test_listed_values():
    assert cos_entire(0.0) == 1.0 and sinc_entire(0.0) == 1.0
    assert cos_entire(math.pi**2 / 4) == pytest.approx(0.0, abs=1e-16)
    assert cos_entire(-1.0) == pytest.approx(1.5430806348, abs=1e-10)
    assert sinc_entire(-1.0) == pytest.approx(1.1752011936, abs=1e-10)
    assert cos_entire_deriv(-1.0) == pytest.approx(-math.sinh(1) / 2, rel=1e-15)
    # central difference oracle for the derivative at pi**2
    h = 1e-5
    fd = (cos_entire(math.pi**2 + h) - cos_entire(math.pi**2 - h)) / (2 * h)
    assert cos_entire_deriv(math.pi**2) == pytest.approx(0.0, abs=1e-15)
    assert fd == pytest.approx(0.0, abs=1e-10)


def test_identities_on_ten_thousand_samples():
    rng = np.random.default_rng(7)
    rho = 100 * np.sqrt(rng.uniform(0, 1, 10_000))
    zeta = rho * np.exp(1j * rng.uniform(-math.pi, math.pi, 10_000))
    s4 = sinc_entire(4 * zeta)
    assert np.all(np.abs(s4 - sinc_entire(zeta) * cos_entire(zeta)) <= 1e-10 * (1 + np.abs(s4)))
    lhs = zeta * sinc_entire(zeta) ** 2 + cos_entire(zeta) ** 2
    scale = 1 + np.abs(zeta * sinc_entire(zeta) ** 2) + np.abs(cos_entire(zeta) ** 2)
    assert np.all(np.abs(lhs - 1) <= 1e-10 * scale)


def test_strictly_decreasing_below_pi_squared():
    x = np.linspace(-100, math.pi**2, 20_001)
    assert np.all(np.diff(cos_entire(x)) < 0)
    assert np.all(np.diff(sinc_entire(x)) < 0)
    assert np.all(sinc_entire(x[:-1]) > 0)


@pytest.mark.parametrize("a", [0, 1, 2, 3])
def test_sinc_bounded_by_cosh(a):
    x = np.concatenate([np.linspace(-a * a, 1e4, 50_001), [-a * a]])
    assert np.all(np.abs(sinc_entire(x)) <= math.cosh(a) + 1e-12)


@given(moduli, angles)
def test_cos_matches_cosine_of_any_root(rho, ang):
    w = polar(math.sqrt(rho), ang)
    for root in (w, -w):
        assert cos_entire(root * root) == pytest.approx(np.cos(root), rel=1e-12, abs=1e-300)
