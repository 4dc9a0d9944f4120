"""Parameter and evaluation-point containers with input validation."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, InvalidArgumentError


def _finite_real(value, name):
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise InvalidArgumentError(f"{name} must be a real number") from None
    if not math.isfinite(x):
        raise InvalidArgumentError(f"{name} must be finite")
    return x


@dataclass(frozen=True)
class CouplingPoint:
    """Coupling ``alpha`` and boundary angle ``theta`` (taken modulo pi)."""

    alpha: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _finite_real(self.alpha, "alpha"))
        object.__setattr__(self, "theta", _finite_real(self.theta, "theta"))

    @property
    def kappa(self):
        return kappa_of(self.alpha)

    def require_self_adjoint(self):
        if self.alpha >= 1.0:
            raise DomainError(f"alpha={self.alpha} must be below 1")
        return self


def kappa_of(alpha):
    """Principal square root of alpha; purely imaginary with positive part for alpha < 0."""
    alpha = float(alpha)
    if alpha >= 0:
        return complex(math.sqrt(alpha), 0.0)
    return complex(0.0, math.sqrt(-alpha))


@dataclass(frozen=True)
class CutPlanePoint:
    """Point of the plane cut along the negative imaginary axis.

    ``phase`` lies in (-pi/2, 3pi/2) so the positive half line has phase 0
    and the negative half line phase pi.
    """

    modulus: float
    phase: float

    def __post_init__(self):
        m = _finite_real(self.modulus, "modulus")
        p = _finite_real(self.phase, "phase")
        if m <= 0:
            raise DomainError("modulus must be positive")
        if not -math.pi / 2 < p < 3 * math.pi / 2:
            raise DomainError("phase must lie in (-pi/2, 3pi/2)")
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "phase", p)

    @classmethod
    def from_complex(cls, z):
        z = complex(z)
        if z == 0:
            raise DomainError("z = 0 is not in the cut plane")
        phase = cmath.phase(z)
        if phase < -math.pi / 2:
            phase += 2 * math.pi
        return cls(abs(z), phase)

    @property
    def z(self):
        return self.modulus * cmath.exp(1j * self.phase)

    @property
    def log(self):
        return complex(math.log(self.modulus), self.phase)

    @property
    def sqrt(self):
        return math.sqrt(self.modulus) * cmath.exp(0.5j * self.phase)


def cut_plane_arrays(z):
    """Return (modulus, phase) arrays for complex input or CutPlanePoint(s)."""
    if isinstance(z, CutPlanePoint):
        return np.asarray(z.modulus), np.asarray(z.phase)
    if isinstance(z, (list, tuple)) and z and isinstance(z[0], CutPlanePoint):
        return np.array([p.modulus for p in z]), np.array([p.phase for p in z])
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("z must be finite")
    modulus = np.abs(arr)
    if np.any(modulus == 0):
        raise DomainError("z = 0 is not in the cut plane")
    phase = np.angle(arr)
    if np.any(phase == -np.pi / 2):
        raise DomainError("z lies on the cut along the negative imaginary axis")
    phase = np.where(phase < -np.pi / 2, phase + 2 * np.pi, phase)
    return modulus, phase


def check_radii(r):
    r = np.asarray(r, dtype=float)
    if not np.all(np.isfinite(r)) or np.any(r <= 0):
        raise InvalidArgumentError("radii must be positive and finite")
    return r
