"""Bessel-type building blocks in the variable zeta = w**2.

Small arguments use the power series. For |w| above ``ASYMPTOTIC_RADIUS`` the
series loses too many digits to cancellation, so the Hankel large-argument
expansion (valid for complex order) is used instead. The expansion is summed
up to its smallest term.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
from scipy.special import rgamma

from .exceptions import RangeError

ASYMPTOTIC_RADIUS = 12.0
EULER_GAMMA = 0.5772156649015329
_MAX_TERMS = 400


def _is_nonpositive_integer(kappa):
    return kappa.imag == 0 and kappa.real <= 0 and kappa.real == round(kappa.real)


def _x_series(kappa, zeta):
    """Power series for X_kappa(zeta) = sum (-zeta/4)**n / (Gamma(kappa+n+1) n!) / 2**kappa."""
    if _is_nonpositive_integer(kappa) and kappa != 0:
        m = int(round(-kappa.real))
        # J_{-m} = (-1)**m J_m
        return (-1) ** m * zeta**m * _x_series(complex(m), zeta)
    q = -zeta / 4
    qmax = float(np.max(np.abs(q))) if q.size else 0.0
    term = np.full(zeta.shape, complex(rgamma(kappa + 1)))
    total = term.copy()
    n = 1
    while True:
        term = term * q / (n * (kappa + n))
        total = total + term
        if n * n > qmax and np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
        n += 1
        if n > _MAX_TERMS:
            raise RangeError("power series did not converge")
    return total * cmath.exp(-kappa * math.log(2.0))


def _y_series(zeta):
    """Series sum_{n>=1} (-1)**n H_n (zeta/4)**n / (n!)**2 with H_n harmonic numbers."""
    q = -zeta / 4
    qmax = float(np.max(np.abs(q))) if q.size else 0.0
    power = np.ones(zeta.shape, dtype=complex)
    total = np.zeros(zeta.shape, dtype=complex)
    harmonic = 0.0
    n = 1
    while True:
        power = power * q / (n * n)
        harmonic += 1.0 / n
        term = harmonic * power
        total = total + term
        if n * n > qmax and np.all(np.abs(term) <= 1e-17 * np.maximum(np.abs(total), 1e-300)):
            break
        n += 1
        if n > _MAX_TERMS:
            raise RangeError("power series did not converge")
    return total


def hankel_sum(nu2, w, sign):
    """Asymptotic sum  sum_k (sign*i)**k a_k(nu) / w**k  cut at its smallest term.

    ``nu2`` is the squared order, ``a_k`` the Hankel coefficients
    prod_{j<=k} (4 nu**2 - (2j-1)**2) / (k! 8**k).
    """
    step = sign * 1j / w
    term = np.ones(w.shape, dtype=complex)
    total = term.copy()
    active = np.ones(w.shape, dtype=bool)
    prev = np.abs(term)
    for k in range(1, _MAX_TERMS):
        term = term * ((4 * nu2 - (2 * k - 1) ** 2) / (8 * k)) * step
        mag = np.abs(term)
        active &= mag < prev
        total = np.where(active, total + term, total)
        active &= mag > 1e-17 * np.abs(total)
        if not active.any():
            break
        prev = mag
    return total


def hankel1(nu, w):
    """H^(1)_nu(w) from the large-argument expansion (principal branches)."""
    w = np.asarray(w, dtype=complex)
    pref = np.sqrt(2 / (np.pi * w))
    return pref * np.exp(1j * (w - nu * np.pi / 2 - np.pi / 4)) * hankel_sum(nu * nu, w, 1)


def hankel2(nu, w):
    """H^(2)_nu(w) from the large-argument expansion (principal branches)."""
    w = np.asarray(w, dtype=complex)
    pref = np.sqrt(2 / (np.pi * w))
    return pref * np.exp(-1j * (w - nu * np.pi / 2 - np.pi / 4)) * hankel_sum(nu * nu, w, -1)


# K_kappa by the trapezoid rule on its cosh integral, used where Re x >= K_MIN_REAL
# and |x| <= ASYMPTOTIC_RADIUS. The integrand is entire in t and analytic in the
# strip |Im t| < pi/2 - |arg x|, so the rule converges geometrically.
K_MIN_REAL = 2.0
_K_STRIP = 0.9 * (0.5 * math.pi - math.acos(K_MIN_REAL / ASYMPTOTIC_RADIUS))
_K_STEP = 2 * math.pi * _K_STRIP / 40
_K_NODES = np.arange(0.0, math.acosh(800 / K_MIN_REAL) + _K_STEP, _K_STEP)
_K_WEIGHTS = np.full(_K_NODES.size, _K_STEP)
_K_WEIGHTS[0] /= 2


def k_integral(kappa, x):
    """K_kappa(x) = int_0^inf exp(-x cosh t) cosh(kappa t) dt for Re x >= K_MIN_REAL, |x| <= 12."""
    x = np.asarray(x, dtype=complex)
    if x.size and (np.min(x.real) < K_MIN_REAL * (1 - 1e-12) or np.max(np.abs(x)) > ASYMPTOTIC_RADIUS * (1 + 1e-12)):
        raise ValueError("k_integral needs Re x >= K_MIN_REAL and |x| <= ASYMPTOTIC_RADIUS")
    flat = x.reshape(-1, 1)
    with np.errstate(under="ignore"):
        terms = np.exp(-flat * np.cosh(_K_NODES)) * (_K_WEIGHTS * np.cosh(complex(kappa) * _K_NODES))
    return terms.sum(axis=1).reshape(x.shape)


def _x_asymptotic(kappa, zeta):
    w = np.sqrt(zeta)
    j = 0.5 * (hankel1(kappa, w) + hankel2(kappa, w))
    return np.exp(-kappa * np.log(w)) * j


def _y_asymptotic(zeta):
    w = np.sqrt(zeta)
    h1 = hankel1(0.0, w)
    h2 = hankel2(0.0, w)
    j0 = 0.5 * (h1 + h2)
    y0 = (h1 - h2) / 2j
    return (EULER_GAMMA - math.log(2.0) + np.log(w)) * j0 - 0.5 * np.pi * y0


def _split(zeta, small_fn, large_fn):
    zeta = np.asarray(zeta, dtype=complex)
    out = np.empty(zeta.shape, dtype=complex)
    large = np.abs(zeta) > ASYMPTOTIC_RADIUS**2
    small = ~large
    if small.any():
        out[small] = small_fn(zeta[small])
    if large.any():
        out[large] = large_fn(zeta[large])
    return out


def x_kappa(kappa, zeta):
    """Entire function X_kappa(zeta) = zeta**(-kappa/2) J_kappa(zeta**(1/2))."""
    kappa = complex(kappa)
    return _split(zeta, lambda z: _x_series(kappa, z), lambda z: _x_asymptotic(kappa, z))


def y_series(zeta):
    """Entire companion series used for the order-zero second solution."""
    return _split(zeta, _y_series, _y_asymptotic)
