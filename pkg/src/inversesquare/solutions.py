"""Solutions of -f'' + (alpha - 1/4)/r**2 f = z f on the half line.

``u_kappa`` is the solution behaving like r**(1/2 + kappa) at the origin.
``a_sol`` and ``b_sol`` form a basis that is entire in the coupling and in
``z``; ``u_theta`` is the solution selected by the boundary angle and
``v_sol`` the solution that is square integrable at infinity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _bessel
from .entire_trig import cos_entire, sinc_entire
from .exceptions import InvalidArgumentError, UnsupportedParameterError
from .points import CouplingPoint, check_radii, cut_plane_arrays, kappa_of

# Below this |alpha| the kappa-difference formulas are replaced by a quadratic
# interpolation through alpha = -ALPHA_MIN, 0, ALPHA_MIN.
ALPHA_MIN = 1e-4
_INTEGER_GAP = 1e-6


@dataclass
class RadialGridFunction:
    """Samples of a function on a strictly increasing grid of radii.

    ``weights`` are optional quadrature weights attached to the grid.
    """

    radii: np.ndarray
    values: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self):
        self.radii = check_radii(self.radii)
        self.values = np.asarray(self.values)
        if self.radii.ndim != 1 or self.values.shape != self.radii.shape:
            raise InvalidArgumentError("radii and values must be 1-d arrays of equal length")
        if np.any(np.diff(self.radii) <= 0):
            raise InvalidArgumentError("radii must be strictly increasing")
        if self.weights is not None:
            self.weights = np.asarray(self.weights, dtype=float)
            if self.weights.shape != self.radii.shape:
                raise InvalidArgumentError("weights must match radii")

    def __len__(self):
        return self.radii.size

    @classmethod
    def from_callable(cls, f, radii, weights=None):
        radii = check_radii(radii)
        return cls(radii, np.asarray(f(radii)), weights)

    @classmethod
    def gauss_legendre(cls, f, a, b, panels=16, order=16):
        """Sample ``f`` on composite Gauss-Legendre nodes of [a, b]."""
        radii, weights = gauss_legendre_panels(a, b, panels, order)
        return cls.from_callable(f, radii, weights)

    @classmethod
    def uniform(cls, f, a, b, n):
        """Sample ``f`` on n equispaced points of [a, b] with trapezoid weights."""
        radii = np.linspace(a, b, n)
        weights = np.full(n, (b - a) / (n - 1))
        weights[[0, -1]] *= 0.5
        return cls.from_callable(f, radii, weights)

    def quadrature_weights(self):
        if self.weights is not None:
            return self.weights
        h = np.diff(self.radii)
        w = np.zeros_like(self.radii)
        w[:-1] += h / 2
        w[1:] += h / 2
        return w


def gauss_legendre_panels(a, b, panels, order):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _broadcast(z, r):
    r = check_radii(r)
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise InvalidArgumentError("z must be finite")
    return np.broadcast_arrays(z, r)


def _finish(out, *inputs):
    if all(np.ndim(x) == 0 for x in inputs):
        return complex(out)
    return out


def x_kappa(kappa, zeta):
    """Entire function zeta**(-kappa/2) J_kappa(zeta**(1/2)) (any consistent branch)."""
    out = _bessel.x_kappa(kappa, np.asarray(zeta, dtype=complex))
    return _finish(out, zeta)


def y_series(zeta):
    """Companion entire series sum_{n>=1} (-1)**n H_n zeta**n / ((n!)**2 4**n)."""
    out = _bessel.y_series(np.asarray(zeta, dtype=complex))
    return _finish(out, zeta)


def _u(kappa, z, r):
    return np.exp((0.5 + kappa) * np.log(r)) * _bessel.x_kappa(kappa, r * r * z)


def u_kappa(kappa, z, r):
    """Solution r**(1/2+kappa) X_kappa(r**2 z), entire in z."""
    z, r_b = _broadcast(z, r)
    return _finish(_u(complex(kappa), z, r_b), z, r)


def _a_kappa_form(kappa, z, r):
    return (_u(kappa, z, r) - _u(-kappa, z, r)) / kappa * cos_entire(kappa * kappa * np.pi**2 / 4)


def _a_zero(z, r):
    return 2 * (
        (np.log(r / 2) + _bessel.EULER_GAMMA) * _u(0j, z, r)
        - np.sqrt(r) * _bessel.y_series(r * r * z)
    )


def _b_kappa_form(kappa, z, r):
    return 0.5 * np.pi * (_u(kappa, z, r) + _u(-kappa, z, r)) * sinc_entire(kappa * kappa * np.pi**2 / 4)


def _near_zero(alpha, form, zero):
    """Quadratic interpolation in alpha through -ALPHA_MIN, 0, ALPHA_MIN."""
    f0 = zero()
    if alpha == 0:
        return f0
    fp = form(kappa_of(ALPHA_MIN))
    fm = form(kappa_of(-ALPHA_MIN))
    d1 = (fp - fm) / (2 * ALPHA_MIN)
    d2 = (fp - 2 * f0 + fm) / (2 * ALPHA_MIN**2)
    return f0 + alpha * d1 + alpha * alpha * d2


def a_kappa(kappa, z, r):
    """Basis solution (u_kappa - u_{-kappa}) cos(pi kappa / 2) / kappa, even in kappa."""
    z, r_b = _broadcast(z, r)
    kappa = complex(kappa)
    if kappa == 0:
        return _finish(_a_zero(z, r_b), z, r)
    return _finish(_a_kappa_form(kappa, z, r_b), z, r)


def b_kappa(kappa, z, r):
    """Basis solution (pi/2)(u_kappa + u_{-kappa}) sinc(pi kappa / 2), even in kappa."""
    z, r_b = _broadcast(z, r)
    return _finish(_b_kappa_form(complex(kappa), z, r_b), z, r)


def _a(alpha, z, r):
    if abs(alpha) >= ALPHA_MIN:
        return _a_kappa_form(kappa_of(alpha), z, r)
    return _near_zero(alpha, lambda k: _a_kappa_form(k, z, r), lambda: _a_zero(z, r))


def _b(alpha, z, r):
    return _b_kappa_form(kappa_of(alpha), z, r)


def _alpha(alpha):
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise InvalidArgumentError("alpha must be finite")
    return alpha


def a_sol(alpha, z, r):
    """First basis solution, entire in alpha and z, equal to a_kappa with kappa**2 = alpha."""
    alpha = _alpha(alpha)
    z, r_b = _broadcast(z, r)
    return _finish(_a(alpha, z, r_b), z, r)


def b_sol(alpha, z, r):
    """Second basis solution, entire in alpha and z, equal to b_kappa with kappa**2 = alpha."""
    alpha = _alpha(alpha)
    z, r_b = _broadcast(z, r)
    return _finish(_b(alpha, z, r_b), z, r)


def u_theta(point, z, r):
    """Solution a_sol cos(theta) + b_sol sin(theta) fixed by the boundary angle."""
    if not isinstance(point, CouplingPoint):
        point = CouplingPoint(*point)
    z, r_b = _broadcast(z, r)
    out = math.cos(point.theta) * _a(point.alpha, z, r_b) + math.sin(point.theta) * _b(point.alpha, z, r_b)
    return _finish(out, z, r)


def _v_series(alpha, kappa, z, logz, r):
    """Weyl solution from u_{+-kappa}, valid for kappa off the integers."""
    if kappa == 0:
        u0 = _u(0j, z, r)
        return 0.5 * (1j * np.pi - logz) * u0 - 0.5 * _a_zero(z, r)
    if abs(alpha) < ALPHA_MIN:
        return _near_zero(
            alpha,
            lambda k: _v_series(k * k, k, z, logz, r),
            lambda: _v_series(0.0, 0j, z, logz, r),
        )
    half = 0.5 * kappa * logz
    return (
        np.pi
        / (2 * cmath.sin(np.pi * kappa))
        * cmath.exp(0.5j * np.pi * kappa)
        * (np.exp(-half) * _u(-kappa, z, r) - cmath.exp(-1j * np.pi * kappa) * np.exp(half) * _u(kappa, z, r))
    )


def _v_asymptotic(kappa, w, r):
    # (i pi/2) e^{i pi kappa/2} sqrt(r) H1_kappa(w), written so it is even in kappa
    pref = 0.5j * np.pi * np.sqrt(r) * np.sqrt(2 / (np.pi * w))
    return pref * np.exp(1j * (w - np.pi / 4)) * _bessel.hankel_sum(kappa * kappa, w, 1)


def v_sol(alpha, z, r):
    """Solution that is square integrable at infinity for Im z > 0.

    ``z`` is a complex number (or array) or a CutPlanePoint; its square root and
    logarithm are taken with the phase in (-pi/2, 3pi/2).
    """
    alpha = _alpha(alpha)
    kappa = kappa_of(alpha)
    nearest = round(kappa.real)
    if kappa.imag == 0 and nearest != 0 and abs(kappa.real - nearest) < _INTEGER_GAP:
        raise UnsupportedParameterError("the order sqrt(alpha) must not be a nonzero integer")
    modulus, phase = cut_plane_arrays(z)
    r_in = r
    r = check_radii(r)
    modulus, phase, r = np.broadcast_arrays(modulus, phase, r)
    logz = np.log(modulus) + 1j * phase
    sqrtz = np.sqrt(modulus) * np.exp(0.5j * phase)
    zc = modulus * np.exp(1j * phase)
    w = r * sqrtz
    out = np.empty(w.shape, dtype=complex)
    large = np.abs(w) > _bessel.ASYMPTOTIC_RADIUS
    # deep in the upper half plane the series cancels badly; V = sqrt(r) K_kappa(-i w)
    decaying = ~large & (w.imag >= _bessel.K_MIN_REAL)
    small = ~large & ~decaying
    if decaying.any():
        out[decaying] = np.sqrt(r[decaying]) * _bessel.k_integral(kappa, -1j * w[decaying])
    if small.any():
        out[small] = _v_series(alpha, kappa, zc[small], logz[small], r[small])
    if large.any():
        out[large] = _v_asymptotic(kappa, w[large], r[large])
    if np.ndim(r_in) == 0 and out.ndim == 0:
        return complex(out)
    return out


def wronskian_ab(alpha):
    """Closed form of W(a_sol, b_sol) = -2 pi Sinc(pi**2 alpha)**2."""
    return -2 * np.pi * sinc_entire(np.pi**2 * float(alpha)) ** 2


def wronskian_u(kappa):
    """Closed form of W(u_kappa, u_{-kappa}) = -(2/pi) sin(pi kappa)."""
    return -2 / np.pi * cmath.sin(np.pi * complex(kappa))


def _uniform_step(x):
    h = np.diff(x)
    if np.allclose(h, h[0], rtol=1e-9, atol=0):
        return (x[-1] - x[0]) / (x.size - 1)
    return None


def derivative(f):
    """First derivative of sampled values at interior nodes.

    Uses the sixth-order centered stencil on grids uniform in r or in log r
    (dropping three nodes at each end; fourth order and two nodes on grids of
    five or six points), and np.gradient otherwise.
    Returns (radii, derivative, slice of the nodes kept).
    """
    r, y = f.radii, f.values
    if r.size < 5:
        raise InvalidArgumentError("need at least 5 grid points")
    for x, chain in ((r, None), (np.log(r), r)):
        h = _uniform_step(x)
        if h is None:
            continue
        if r.size >= 7:
            d = (-y[:-6] + 9 * y[1:-5] - 45 * y[2:-4] + 45 * y[4:-2] - 9 * y[5:-1] + y[6:]) / (60 * h)
            keep = slice(3, -3)
        else:
            d = (y[:-4] - 8 * y[1:-3] + 8 * y[3:-1] - y[4:]) / (12 * h)
            keep = slice(2, -2)
        if chain is not None:
            d = d / chain[keep]
        return r[keep], d, keep
    return r, np.gradient(y, r), slice(None)


def wronskian_numeric(f, g):
    """Numerical Wronskian f g' - f' g at interior nodes of a shared grid."""
    if f.radii.shape != g.radii.shape or not np.array_equal(f.radii, g.radii):
        raise InvalidArgumentError("both functions must share the same radial grid")
    radii, df, sl = derivative(f)
    _, dg, _ = derivative(g)
    w = f.values[sl] * dg - df * g.values[sl]
    return RadialGridFunction(radii, w)


def sample(fn, *args, radii):
    """Evaluate a solution family on ``radii`` and wrap it as a RadialGridFunction."""
    return RadialGridFunction(np.asarray(radii, dtype=float), fn(*args, radii))
