import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from inversesquare import AccuracyError
from inversesquare.quadrature import gauss_kronrod, integrate_line


def test_polynomial_on_one_panel():
    res = gauss_kronrod(lambda x: x**20, 0.0, 1.0)
    assert res.value == pytest.approx(1 / 21, rel=1e-14)
    assert res.error < 1e-10


def test_breakpoints_handle_kinks():
    res = gauss_kronrod(lambda x: np.abs(x - 0.3), 0.0, 1.0, 1e-13, breakpoints=[0.3])
    assert res.value == pytest.approx(0.5 * (0.3**2 + 0.7**2), abs=1e-13)


def test_peaked_integrand_adapts():
    eps = 1e-4
    res = gauss_kronrod(lambda x: eps / (x * x + eps * eps), -1.0, 1.0, 1e-10)
    assert res.value == pytest.approx(2 * math.atan(1 / eps), rel=1e-10)


def test_accuracy_error_carries_partial_value():
    with pytest.raises(AccuracyError) as info:
        gauss_kronrod(lambda x: x**-0.9, 0.0, 1.0, 1e-14, max_panels=20)
    assert 0 < info.value.partial_value < 10


@given(st.floats(-5, 5), st.floats(0.2, 3))
def test_gaussian_on_the_line(center, width):
    res = integrate_line(lambda s: np.exp(-0.5 * ((s - center) / width) ** 2), 1e-12)
    assert res.value == pytest.approx(width * math.sqrt(2 * math.pi), rel=1e-11)
