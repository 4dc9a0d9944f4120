"""Entire analogues of cos and sinc in the variable zeta = w**2.

``cos_entire(w**2) == cos(w)`` and ``sinc_entire(w**2) == sin(w)/w`` for any
branch of ``w``, so both functions are single valued on the complex plane and
real on the real axis: for negative arguments they turn into cosh and
sinh(x)/x.
"""

from __future__ import annotations

import math

import numpy as np

from .exceptions import InvalidArgumentError

# |zeta| at or below this uses the Taylor series, above it the closed forms.
SERIES_RADIUS = 1.0
_N_TERMS = 16

_COS_COEFFS = np.array([(-1) ** k / math.factorial(2 * k) for k in range(_N_TERMS)])
_SINC_COEFFS = np.array([(-1) ** k / math.factorial(2 * k + 1) for k in range(_N_TERMS)])
_DCOS_COEFFS = np.array(
    [(-1) ** k * k / math.factorial(2 * k) for k in range(1, _N_TERMS + 1)]
)


def _prepare(zeta):
    z = np.asarray(zeta)
    if z.dtype.kind not in "biufc":
        raise InvalidArgumentError("argument must be numeric")
    is_complex = z.dtype.kind == "c"
    z = z.astype(complex if is_complex else float)
    if not np.all(np.isfinite(z)):
        raise InvalidArgumentError("argument must be finite")
    return z, is_complex


def _finish(out, zeta):
    if np.ndim(zeta) == 0:
        return out[()]
    return out


def _horner(coeffs, z):
    acc = np.zeros_like(z) + coeffs[-1]
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


def _evaluate(zeta, coeffs, real_pos, real_neg, cplx):
    z, is_complex = _prepare(zeta)
    out = np.empty_like(z)
    small = np.abs(z) <= SERIES_RADIUS
    out[small] = _horner(coeffs, z[small])
    big = ~small
    if is_complex:
        out[big] = cplx(np.sqrt(z[big]))
    else:
        x = z[big]
        root = np.sqrt(np.abs(x))
        out[big] = np.where(x > 0, real_pos(root), real_neg(root))
    return _finish(out, zeta)


def cos_entire(zeta):
    """Sum of (-zeta)**k / (2k)!, i.e. cos(sqrt(zeta)) on any branch."""
    return _evaluate(zeta, _COS_COEFFS, np.cos, np.cosh, np.cos)


def sinc_entire(zeta):
    """Sum of (-zeta)**k / (2k+1)!, i.e. sin(w)/w with w**2 = zeta."""
    return _evaluate(
        zeta,
        _SINC_COEFFS,
        lambda w: np.sin(w) / w,
        lambda w: np.sinh(w) / w,
        lambda w: np.sin(w) / w,
    )


def cos_entire_deriv(zeta):
    """Derivative of :func:`cos_entire` from the term-wise differentiated series."""
    return _evaluate(
        zeta,
        _DCOS_COEFFS,
        lambda w: -np.sin(w) / (2 * w),
        lambda w: -np.sinh(w) / (2 * w),
        lambda w: -np.sin(w) / (2 * w),
    )
