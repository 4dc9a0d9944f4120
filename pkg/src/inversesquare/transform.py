"""Eigenfunction expansion: forward and inverse transforms and their checks.

The forward transform of psi is E -> integral of u_theta(E|r) psi(r) dr on
the continuous grid, plus the same integral at each eigenvalue. The inverse
sums both parts against the spectral measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import _bessel
from .entire_trig import cos_entire, sinc_entire
from .exceptions import DomainError, InvalidArgumentError
from .points import CouplingPoint, CutPlanePoint
from .solutions import RadialGridFunction, gauss_legendre_panels, u_theta
from .spectral import PhaseRegion, build_measure, phase_region, r_func, r_scale

PI2 = math.pi**2
RADIAL_WINDOW = (1e-6, 1e3)
# Beyond sqrt|E| r = MATCH_POINT the eigenfunction is taken from the decaying
# Weyl solution instead of the (cancelling) combination of u_{+-kappa}.
MATCH_POINT = 4.0


@dataclass
class EnergyGrid:
    """Quadrature nodes and weights on (0, E_max] for integrals in dE."""

    energies: np.ndarray
    weights: np.ndarray

    @classmethod
    def log_gauss(cls, e_max=400.0, n_nodes=2048, e_min=1e-10, order=16):
        """Composite Gauss-Legendre rule in ln E with n_nodes nodes in total."""
        if not 0 < e_min < e_max:
            raise InvalidArgumentError("need 0 < e_min < e_max")
        if n_nodes % order:
            raise InvalidArgumentError("n_nodes must be a multiple of order")
        s, w = gauss_legendre_panels(math.log(e_min), math.log(e_max), n_nodes // order, order)
        e = np.exp(s)
        return cls(e, w * e)


@dataclass
class TransformResult:
    """Transform values on the continuous grid and at the eigenvalues."""

    grid: EnergyGrid
    continuous_part: np.ndarray
    point_energies: np.ndarray
    point_part: np.ndarray


def _point(point):
    point = point if isinstance(point, CouplingPoint) else CouplingPoint(*point)
    return point.require_self_adjoint()


def _check_support(radii):
    if radii.min() < RADIAL_WINDOW[0] or radii.max() > RADIAL_WINDOW[1]:
        raise DomainError(f"radii must lie in {RADIAL_WINDOW}")


def eigenfunction(point, energy, r):
    """u_theta(E|r) at an eigenvalue E < 0, accurate where it decays.

    For sqrt|E| r > MATCH_POINT it is written as c * sqrt(r) K_kappa(sqrt|E| r)
    with c = -2 pi Sinc(pi**2 alpha)**2 / R(alpha, theta + pi/2, E), which
    follows from the Wronskian identities. K comes from its cosh integral up
    to x = 12 and from the large-argument expansion beyond.
    """
    point = _point(point)
    r = np.asarray(r, dtype=float)
    root = math.sqrt(-energy)
    x = root * r
    out = np.empty(r.shape)
    near = x <= MATCH_POINT
    if near.any():
        out[near] = np.real(u_theta(point, complex(energy), r[near]))
    far = ~near
    if far.any():
        z = CutPlanePoint(-energy, math.pi)
        c = -2 * math.pi * sinc_entire(PI2 * point.alpha) ** 2 / r_func(
            CouplingPoint(point.alpha, point.theta + math.pi / 2), z
        )
        xf = x[far]
        k = np.empty(xf.shape, dtype=complex)
        mid = xf <= _bessel.ASYMPTOTIC_RADIUS
        k[mid] = _bessel.k_integral(point.kappa, xf[mid])
        xl = xf[~mid]
        k[~mid] = np.sqrt(np.pi / (2 * xl)) * np.exp(-xl) * _bessel.hankel_sum(point.alpha, 1j * xl, 1)
        out[far] = np.real(c * np.sqrt(r[far]) * k)
    return out


def _kernel(point, energies, radii):
    return np.real(u_theta(point, energies[:, None].astype(complex), radii[None, :]))


def forward(point, psi, grid, measure=None):
    """Forward transform of a sampled function."""
    point = _point(point)
    if not isinstance(psi, RadialGridFunction):
        raise InvalidArgumentError("psi must be a RadialGridFunction")
    _check_support(psi.radii)
    measure = measure or build_measure(point)
    wpsi = psi.quadrature_weights() * psi.values
    cont = _kernel(point, grid.energies, psi.radii) @ wpsi
    pe = np.array([e for e, _ in measure.points])
    pp = np.array([eigenfunction(point, e, psi.radii) @ wpsi for e in pe])
    return TransformResult(grid, cont, pe, pp)


def inverse(point, coeffs, measure, radii):
    """Reconstruct the function at ``radii`` from its transform."""
    point = _point(point)
    radii = np.asarray(radii, dtype=float)
    _check_support(radii)
    grid = coeffs.grid
    dens = measure.density(grid.energies)
    cont = (grid.weights * dens * coeffs.continuous_part) @ _kernel(point, grid.energies, radii)
    masses = dict(measure.points)
    disc = np.zeros(radii.shape, dtype=np.result_type(coeffs.point_part, float))
    for e, c in zip(coeffs.point_energies, coeffs.point_part):
        disc = disc + masses[e] * c * eigenfunction(point, e, radii)
    return cont + disc


def transform_norm2(coeffs, measure):
    """Squared norm of the transform in the spectral measure."""
    dens = measure.density(coeffs.grid.energies)
    cont = float(np.sum(coeffs.grid.weights * dens * np.abs(coeffs.continuous_part) ** 2))
    masses = dict(measure.points)
    disc = math.fsum(masses[e] * abs(c) ** 2 for e, c in zip(coeffs.point_energies, coeffs.point_part))
    return cont + disc


def parseval_check(point, psi, grid, measure=None):
    """Return (||psi||**2, ||transform||**2, relative difference)."""
    point = _point(point)
    measure = measure or build_measure(point)
    lhs = float(np.sum(psi.quadrature_weights() * np.abs(psi.values) ** 2))
    rhs = transform_norm2(forward(point, psi, grid, measure), measure)
    return lhs, rhs, abs(lhs - rhs) / lhs


def round_trip_error(point, psi, grid, measure=None):
    """Relative L2 error of inverse(forward(psi)) on the nodes of psi."""
    point = _point(point)
    measure = measure or build_measure(point)
    back = inverse(point, forward(point, psi, grid, measure), measure, psi.radii)
    w = psi.quadrature_weights()
    return math.sqrt(np.sum(w * np.abs(back - psi.values) ** 2) / np.sum(w * np.abs(psi.values) ** 2))


def apply_operator(point, psi):
    """-psi'' + (alpha - 1/4) psi / r**2 on a uniform grid (fourth-order stencil).

    The result lives on the grid without its two outermost nodes at each end.
    """
    point = _point(point)
    r, y = psi.radii, psi.values
    h = (r[-1] - r[0]) / (r.size - 1)
    if not np.allclose(np.diff(r), h, rtol=1e-9, atol=0):
        raise InvalidArgumentError("psi must be sampled on a uniform grid")
    d2 = (-y[:-4] + 16 * y[1:-3] - 30 * y[2:-2] + 16 * y[3:-1] - y[4:]) / (12 * h * h)
    inner = r[2:-2]
    values = -d2 + (point.alpha - 0.25) * y[2:-2] / inner**2
    weights = np.full(inner.size, h)
    return RadialGridFunction(inner, values, weights)


def diagonalization_check(point, psi, grid, measure=None):
    """Max over energies of |F(L psi) - E F(psi)| relative to max |E F(psi)|."""
    point = _point(point)
    measure = measure or build_measure(point)
    lpsi = apply_operator(point, psi)
    trimmed = RadialGridFunction(lpsi.radii, psi.values[2:-2], lpsi.weights)
    f_l = forward(point, lpsi, grid, measure)
    f_p = forward(point, trimmed, grid, measure)
    diff = np.concatenate([
        f_l.continuous_part - grid.energies * f_p.continuous_part,
        f_l.point_part - f_p.point_energies * f_p.point_part,
    ])
    ref = np.concatenate([grid.energies * f_p.continuous_part, f_p.point_energies * f_p.point_part])
    worst = float(np.max(np.abs(diff)))
    size = float(np.max(np.abs(ref)))
    return worst / size if size > 0 else worst


def _check_eigenvalue(point, energy):
    if energy >= 0 or phase_region(point) is PhaseRegion.Q0:
        raise DomainError("not an eigenvalue")
    z = CutPlanePoint(-energy, math.pi)
    if abs(r_func(point, z)) > 1e-8 * max(1.0, r_scale(point, z)):
        raise DomainError(f"{energy!r} is not an eigenvalue")


def eigenfunction_norm_check(point, energy, x_min=1e-12, x_max=40.0, panel_width=0.25):
    """Return (numerical integral of u_theta(E|r)**2, closed form 1/mass).

    The integral runs over sqrt|E| r in [x_min, x_max] on Gauss-Legendre
    panels in log r, with an exponential tail added beyond x_max.
    """
    point = _point(point)
    energy = float(energy)
    _check_eigenvalue(point, energy)
    root = math.sqrt(-energy)
    lo, hi = math.log(x_min), math.log(x_max)
    t, w = gauss_legendre_panels(lo, hi, math.ceil((hi - lo) / panel_width), 16)
    r = np.exp(t) / root
    f = eigenfunction(point, energy, r)
    numeric = float(np.sum(w * r * f * f))
    r_end = x_max / root
    end = eigenfunction(point, energy, np.array([r_end]))[0]
    numeric += end * end / (2 * root)
    quarter = cos_entire(PI2 * point.alpha / 4)
    closed = 2 * sinc_entire(PI2 * point.alpha) * (quarter**2 - math.sin(point.theta) ** 2) / abs(energy)
    return numeric, float(closed)


def gaussian_bump(center=1.5, width=1 / 12, support=(1.0, 2.0)):
    """Gaussian profile cut to ``support`` (negligible at the cut for narrow widths)."""
    a, b = support

    def f(r):
        r = np.asarray(r, dtype=float)
        return np.where((r >= a) & (r <= b), np.exp(-0.5 * ((r - center) / width) ** 2), 0.0)

    return f


def smooth_bump(support=(1.0, 2.0)):
    """C-infinity bump exp(-1/(1 - x**2)) rescaled to ``support``."""
    a, b = support

    def f(r):
        x = (2 * np.asarray(r, dtype=float) - a - b) / (b - a)
        out = np.zeros_like(x)
        inside = np.abs(x) < 1
        out[inside] = np.exp(-1 / (1 - x[inside] ** 2))
        return out

    return f


class SpectralTransform(TransformerMixin, BaseEstimator):
    """Transform to the spectral representation of the inverse-square operator.

    ``fit`` builds the spectral measure, the energy grid and the radial
    quadrature on ``support``. Rows of ``X`` are functions sampled at
    ``radii_``; ``transform`` returns their coefficients (continuous grid
    followed by eigenvalues) and ``inverse_transform`` maps them back.
    """

    def __init__(self, alpha=0.0, theta=0.0, support=(1.0, 2.0), n_radial=128,
                 e_max=400.0, n_energies=2048, point_mass_floor=1e-14):
        self.alpha = alpha
        self.theta = theta
        self.support = support
        self.n_radial = n_radial
        self.e_max = e_max
        self.n_energies = n_energies
        self.point_mass_floor = point_mass_floor

    def fit(self, X=None, y=None):
        self.coupling_ = _point((self.alpha, self.theta))
        a, b = (float(v) for v in self.support)
        if not 0 < a < b:
            raise InvalidArgumentError("support must satisfy 0 < a < b")
        if self.n_radial % 16:
            raise InvalidArgumentError("n_radial must be a multiple of 16")
        self.radii_, self.radial_weights_ = gauss_legendre_panels(a, b, self.n_radial // 16, 16)
        _check_support(self.radii_)
        self.grid_ = EnergyGrid.log_gauss(self.e_max, self.n_energies)
        self.measure_ = build_measure(self.coupling_, self.point_mass_floor)
        self.point_energies_ = np.array([e for e, _ in self.measure_.points])
        self.point_masses_ = np.array([m for _, m in self.measure_.points])
        kernel = _kernel(self.coupling_, self.grid_.energies, self.radii_)
        eig = np.array([eigenfunction(self.coupling_, e, self.radii_) for e in self.point_energies_])
        self.kernel_ = np.vstack([kernel, eig.reshape(-1, self.radii_.size)])
        dens = self.measure_.density(self.grid_.energies)
        self.spectral_weights_ = np.concatenate([self.grid_.weights * dens, self.point_masses_])
        return self

    def transform(self, X):
        check_is_fitted(self)
        X = check_array(X, dtype=[np.float64, np.complex128])
        if X.shape[1] != self.radii_.size:
            raise InvalidArgumentError(f"expected {self.radii_.size} radial samples per row")
        return (X * self.radial_weights_) @ self.kernel_.T

    def inverse_transform(self, X):
        check_is_fitted(self)
        X = check_array(X, dtype=[np.float64, np.complex128])
        if X.shape[1] != self.kernel_.shape[0]:
            raise InvalidArgumentError(f"expected {self.kernel_.shape[0]} coefficients per row")
        return (X * self.spectral_weights_) @ self.kernel_

    def norm2(self, coefficients):
        """Squared spectral norm of each row of coefficients."""
        check_is_fitted(self)
        return np.sum(np.abs(coefficients) ** 2 * self.spectral_weights_, axis=1)
