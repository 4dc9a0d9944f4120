import math

import mpmath as mp
import numpy as np
import pytest
from sklearn.base import clone

from inversesquare import (
    CouplingPoint,
    DomainError,
    EnergyGrid,
    InvalidArgumentError,
    RadialGridFunction,
    SpectralTransform,
    build_measure,
    eigenvalues,
    u_theta,
)
from inversesquare import transform

PI = math.pi


@pytest.fixture(scope="module")
def fitted():
    return SpectralTransform(alpha=-1.0, theta=PI / 6, e_max=3000.0).fit()


def test_energy_grid_integrates_exactly():
    grid = EnergyGrid.log_gauss(e_max=400.0, n_nodes=2048)
    assert grid.energies.size == 2048 and np.all(np.diff(grid.energies) > 0)
    assert np.sum(grid.weights) == pytest.approx(400.0 - 1e-10, rel=1e-13)
    assert np.sum(grid.weights * np.exp(-grid.energies)) == pytest.approx(math.exp(-1e-10) - math.exp(-400), rel=1e-12)


def test_eigenfunction_is_the_decaying_solution():
    # direct evaluation is reliable up to the match point; beyond it the oracle is
    # sqrt(r) K_kappa(sqrt|E| r) scaled to agree with the direct value at x = 5
    for point in (CouplingPoint(0.0, 0.0), CouplingPoint(-1.0, PI / 6), CouplingPoint(0.3, 0.4)):
        for sh in eigenvalues(point, (-1e3, -1e-3))[:3]:
            root = math.sqrt(-sh.energy)
            kappa = point.kappa
            k_form = lambda x: float(mp.re(mp.sqrt(x / root) * mp.besselk(kappa, x)))  # noqa: E731
            anchor = float(np.real(u_theta(point, complex(sh.energy), 5.0 / root)))
            scale = anchor / k_form(5.0)
            x = np.array([3.0, 3.99, 4.01, 11.9, 12.1, 30.0])
            got = transform.eigenfunction(point, sh.energy, x / root)
            assert got == pytest.approx([scale * k_form(v) for v in x], rel=1e-8)


def test_eigenfunction_norm_closed_form():
    numeric, closed = transform.eigenfunction_norm_check((0.0, 0.0), -1.0)
    assert closed == 2.0
    assert numeric == pytest.approx(closed, rel=1e-10)
    with pytest.raises(DomainError):
        transform.eigenfunction_norm_check((0.0, 0.0), -2.0)


def test_estimator_round_trip(fitted):
    X = np.vstack([transform.gaussian_bump(c, 1 / 12)(fitted.radii_) for c in (1.4, 1.5, 1.6)])
    back = fitted.inverse_transform(fitted.transform(X))
    assert np.max(np.abs(back - X)) < 1e-4
    norms = fitted.norm2(fitted.transform(X))
    direct = np.sum(fitted.radial_weights_ * X**2, axis=1)
    assert norms == pytest.approx(direct, rel=1e-8)


def test_estimator_params_and_clone(fitted):
    params = fitted.get_params()
    assert params["alpha"] == -1.0 and params["e_max"] == 3000.0
    fresh = clone(fitted)
    assert not hasattr(fresh, "kernel_")
    assert fitted.kernel_.shape == (2048 + len(fitted.point_energies_), fitted.radii_.size)


def test_estimator_validation(fitted):
    with pytest.raises(InvalidArgumentError):
        fitted.transform(np.ones((1, 5)))
    with pytest.raises(InvalidArgumentError):
        SpectralTransform(n_radial=100).fit()
    with pytest.raises(DomainError):
        SpectralTransform(alpha=1.2).fit()


def test_function_api_matches_estimator(fitted):
    psi = RadialGridFunction(fitted.radii_, transform.gaussian_bump()(fitted.radii_), fitted.radial_weights_)
    res = transform.forward(fitted.coupling_, psi, fitted.grid_, fitted.measure_)
    est = fitted.transform(psi.values[None, :])[0]
    assert np.concatenate([res.continuous_part, res.point_part]) == pytest.approx(est, rel=1e-12, abs=1e-14)


def test_operator_is_diagonalised():
    point = CouplingPoint(0.25, PI / 6)
    psi = RadialGridFunction.uniform(transform.smooth_bump((1.0, 2.0)), 1.0, 2.0, 801)
    grid = EnergyGrid.log_gauss(e_max=400.0, n_nodes=512)
    assert transform.diagonalization_check(point, psi, grid) < 1e-6


def test_support_must_fit_window():
    psi = RadialGridFunction.gauss_legendre(transform.gaussian_bump(), 1.0, 2e3, 2, 16)
    with pytest.raises(DomainError):
        transform.forward((0.0, 0.0), psi, EnergyGrid.log_gauss(n_nodes=64), build_measure((0.0, 0.0)))
