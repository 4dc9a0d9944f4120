"""Closed-form spectral data: R, the m-function, densities, regions, eigenvalues.

Every formula is written with the entire functions ``cos_entire`` and
``sinc_entire`` so that it is analytic in the coupling across alpha = 0 and
needs no choice of square root of alpha.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import quadrature
from .entire_trig import cos_entire, sinc_entire
from .exceptions import AccuracyError, DomainError, InvalidArgumentError, PoleError
from .points import CouplingPoint, CutPlanePoint, cut_plane_arrays

PI = math.pi
PI2 = PI * PI


class PhaseRegion(enum.Enum):
    """Q0: no eigenvalues, Q1: one negative eigenvalue, Qinf: infinitely many."""

    Q0 = "Q0"
    Q1 = "Q1"
    QINF = "Qinf"

    def __str__(self):
        return self.value


def _point(point):
    if isinstance(point, CouplingPoint):
        return point
    return CouplingPoint(*point)


def _self_adjoint(point):
    point = _point(point)
    if point.alpha >= 1.0:
        raise DomainError(f"alpha={point.alpha} must be below 1")
    return point


def _scalar_or_array(out, *inputs):
    if all(np.ndim(x) == 0 for x in inputs):
        return out[()]
    return out


def _energy_arrays(z):
    modulus, phase = cut_plane_arrays(z)
    return np.log(modulus), phase


def _r_terms(alpha, theta, log_e, phi):
    """The two groups of terms of R written branch free (all inputs broadcast)."""
    a2 = PI2 / 4
    half_phi2 = phi * phi / 4
    b2 = (PI - phi) ** 2 / 4
    c2 = log_e * log_e / 4
    cos_b = cos_entire(b2 * alpha)
    e_minus = np.exp(-1j * theta)
    cos_c = cos_entire(-c2 * alpha)
    sinc_c = sinc_entire(-c2 * alpha)
    first = 1j * (
        PI * e_minus * sinc_entire(a2 * alpha) * cos_b
        - phi * np.cos(theta) * sinc_entire(half_phi2 * alpha)
    ) * cos_c
    second = -log_e * (
        e_minus * cos_entire(a2 * alpha) * cos_b
        + 1j * np.sin(theta) * cos_entire(half_phi2 * alpha)
    ) * sinc_c
    return first, second


def _r(alpha, theta, log_e, phi):
    first, second = _r_terms(alpha, theta, log_e, phi)
    return first + second


def _r_scale(alpha, theta, log_e, phi):
    a2 = PI2 / 4
    half_phi2 = phi * phi / 4
    b2 = (PI - phi) ** 2 / 4
    c2 = log_e * log_e / 4
    cos_b = cos_entire(b2 * alpha)
    cos_c = np.abs(cos_entire(-c2 * alpha))
    sinc_c = np.abs(sinc_entire(-c2 * alpha))
    return (
        np.abs(PI * sinc_entire(a2 * alpha) * cos_b) * cos_c
        + np.abs(phi * np.cos(theta) * sinc_entire(half_phi2 * alpha)) * cos_c
        + np.abs(log_e * cos_entire(a2 * alpha) * cos_b) * sinc_c
        + np.abs(log_e * np.sin(theta) * cos_entire(half_phi2 * alpha)) * sinc_c
    )


def r_values(alpha, theta, log_e, phi):
    """Vectorised R with every argument an array: z = exp(log_e + i phi)."""
    args = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (alpha, theta, log_e, phi)))
    return _r(*args)


def r_scale_values(alpha, theta, log_e, phi):
    """Vectorised :func:`r_scale`."""
    args = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (alpha, theta, log_e, phi)))
    return _r_scale(*args)


def r_scale(point, z):
    """Sum of the magnitudes of the terms of R; the natural size for rounding errors."""
    point = _point(point)
    log_e, phi = _energy_arrays(z)
    out = _r_scale(point.alpha, point.theta, log_e, phi)
    return _scalar_or_array(np.asarray(out), log_e)


def r_func(point, z):
    """R(alpha, theta, z): Wronskian of the Weyl solution with u_theta.

    ``z`` is complex (phase taken in (-pi/2, 3pi/2)) or a CutPlanePoint.
    """
    point = _point(point)
    log_e, phi = _energy_arrays(z)
    out = _r(point.alpha, point.theta, log_e, phi)
    return _scalar_or_array(np.asarray(out), log_e)


def m_func(point, z):
    """Titchmarsh-Weyl m-function -R(theta + pi/2) / (2 pi**2 Sinc(pi**2 alpha)**2 R(theta))."""
    point = _self_adjoint(point)
    log_e, phi = _energy_arrays(z)
    num = _r(point.alpha, point.theta + PI / 2, log_e, phi)
    den = _r(point.alpha, point.theta, log_e, phi)
    if np.any(np.abs(den) < 1e-300):
        raise PoleError("z is an eigenvalue (R vanishes)")
    s = sinc_entire(PI2 * point.alpha)
    out = -num / (2 * PI2 * s * s * den)
    return _scalar_or_array(np.asarray(out), log_e)


def im_m_closed(point, z):
    """Imaginary part of the m-function from its closed form."""
    point = _self_adjoint(point)
    log_e, phi = _energy_arrays(z)
    den = _r(point.alpha, point.theta, log_e, phi)
    gap = PI - phi
    out = gap * sinc_entire(gap * gap * point.alpha) / (
        2 * PI * sinc_entire(PI2 * point.alpha) * np.abs(den) ** 2
    )
    return _scalar_or_array(np.asarray(out), log_e)


def t_density(point, energy):
    """Density of the absolutely continuous part, 1/(2|R|**2) for E > 0 and 0 otherwise."""
    point = _self_adjoint(point)
    e = np.asarray(energy, dtype=float)
    if not np.all(np.isfinite(e)):
        raise InvalidArgumentError("energies must be finite")
    out = np.zeros(e.shape)
    pos = e > 0
    if pos.any():
        rv = _r(point.alpha, point.theta, np.log(e[pos]), np.zeros(pos.sum()))
        out[pos] = 0.5 / np.abs(rv) ** 2
    return _scalar_or_array(out, energy)


def tau_func(alpha, phi):
    """tau(alpha, phi) = (pi-phi)**2 Sinc((pi-phi)**2 alpha/4)**2 - pi**2 Sinc(pi**2 alpha/4)**2."""
    phi = np.asarray(phi, dtype=float)
    gap = PI - phi
    out = gap * gap * sinc_entire(gap * gap * alpha / 4) ** 2 - PI2 * sinc_entire(PI2 * alpha / 4) ** 2
    return _scalar_or_array(out, phi)


def mu_func(alpha, phi):
    """mu(alpha, phi) = 2 pi**2 Sinc(pi**2 alpha)**2 + Cos(pi**2 alpha) tau(alpha, phi)."""
    out = 2 * PI2 * sinc_entire(PI2 * alpha) ** 2 + cos_entire(PI2 * alpha) * tau_func(alpha, phi)
    return out


def big_phi(alpha, energy):
    """Phi(alpha, E) = ln(E) Sinc(-alpha ln(E)**2 / 4)."""
    log_e = np.log(np.asarray(energy, dtype=float))
    out = log_e * sinc_entire(-alpha * log_e * log_e / 4)
    return _scalar_or_array(out, energy)


def _big_t(alpha, theta, log_e, phi):
    l2 = log_e * log_e
    gap2 = (PI - phi) ** 2
    tau = gap2 * sinc_entire(gap2 * alpha / 4) ** 2 - PI2 * sinc_entire(PI2 * alpha / 4) ** 2
    mu = 2 * PI2 * sinc_entire(PI2 * alpha) ** 2 + cos_entire(PI2 * alpha) * tau
    c2t = np.cos(2 * theta)
    return (
        l2 * sinc_entire(-alpha * l2 / 4) ** 2 * (1 + c2t * cos_entire(PI2 * alpha))
        - 2 * PI * log_e * sinc_entire(-alpha * l2) * sinc_entire(PI2 * alpha) * np.sin(2 * theta)
        + tau * c2t
        + mu
    )


def big_t_values(alpha, theta, log_e, phi):
    """Vectorised T with every argument an array."""
    args = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (alpha, theta, log_e, phi)))
    return _big_t(*args)


def big_t(point, z):
    """T = 2|R|**2 from its expansion in ln E, tau and mu."""
    point = _point(point)
    log_e, phi = _energy_arrays(z)
    return _scalar_or_array(np.asarray(_big_t(point.alpha, point.theta, log_e, phi)), log_e)


def omega(theta):
    """Region boundary (1 - 2|theta|/pi)**2 with theta reduced to [-pi/2, pi/2]."""
    t = _reduce(theta)[0]
    return (1 - 2 * abs(t) / PI) ** 2


def _reduce(theta):
    """Return (theta_hat, m) with theta = theta_hat + pi*m and theta_hat in [-pi/2, pi/2]."""
    m = math.floor(theta / PI + 0.5)
    t = theta - PI * m
    if t > PI / 2:
        t -= PI
        m += 1
    elif t < -PI / 2:
        t += PI
        m -= 1
    return t, m


def phase_region(point):
    """Classify (alpha, theta) into Q0, Q1 or Qinf.

    The boundary alpha = omega(theta) is cross-checked against
    sin(theta)**2 = Cos(pi**2 alpha / 4)**2.
    """
    point = _self_adjoint(point)
    if point.alpha < 0:
        return PhaseRegion.QINF
    w = omega(point.theta)
    in_q0 = point.alpha >= w
    other = math.sin(point.theta) ** 2 >= cos_entire(PI2 * point.alpha / 4) ** 2
    if in_q0 != other and abs(point.alpha - w) > 1e-9:
        raise AccuracyError("region criteria disagree away from the boundary")
    return PhaseRegion.Q0 if in_q0 else PhaseRegion.Q1


def in_eigen_domain(point):
    """Membership in the set where S is defined: alpha < 0, or 0 <= alpha < omega with |theta| < pi/2."""
    point = _point(point)
    if point.alpha < 0:
        return True
    return abs(point.theta) < PI / 2 and point.alpha < omega(point.theta) and point.alpha < 1


def _artanh_ratio(x):
    """artanh(sqrt(x))/sqrt(x), analytic for x < 1 (arctan form for x < 0)."""
    if abs(x) < 1e-3:
        return sum(x**k / (2 * k + 1) for k in range(8))
    if x > 0:
        s = math.sqrt(x)
        return math.atanh(s) / s
    s = math.sqrt(-x)
    return math.atan(s) / s


def _s_reduced(alpha, t):
    """S(alpha, t) for |t| <= pi/2 in its branch-free form."""
    if abs(t) == PI / 2 or abs(math.cos(t)) < 1e-300:
        return math.copysign(PI / math.sqrt(-alpha), t)
    zeta = PI2 * alpha / 4
    s1 = sinc_entire(zeta)
    c = cos_entire(zeta)
    tan_t = math.tan(t)
    x = zeta * s1 * s1 * tan_t * tan_t / (c * c)
    return PI * s1 * tan_t / c * _artanh_ratio(x)


def s_func(point):
    """The function S whose values are the logarithms of |E| for eigenvalues E.

    Defined for alpha < 0 (any theta) and for 0 <= alpha < omega(theta) with
    |theta| < pi/2.
    """
    point = _point(point)
    if not in_eigen_domain(point):
        raise DomainError(f"S is not defined at alpha={point.alpha}, theta={point.theta}")
    t, m = _reduce(point.theta)
    s = _s_reduced(point.alpha, t)
    if m:
        s += 2 * PI * m / math.sqrt(-point.alpha)
    return s


@dataclass(frozen=True)
class EigenSheet:
    """Eigenvalue ``energy`` = -exp(s) on branch ``branch_index`` (s = S(alpha, theta + pi k))."""

    coupling: CouplingPoint
    branch_index: int
    s: float
    energy: float


def point_mass(point, energy):
    """Weight of the point mass of the spectral measure at an eigenvalue."""
    point = _self_adjoint(point)
    energy = float(energy)
    if energy >= 0:
        raise DomainError("eigenvalues are negative")
    if phase_region(point) is PhaseRegion.Q0:
        raise DomainError("no eigenvalues in region Q0")
    quarter = cos_entire(PI2 * point.alpha / 4)
    den = 2 * sinc_entire(PI2 * point.alpha) * (quarter * quarter - math.sin(point.theta) ** 2)
    return float(abs(energy) / den)


def _post_check(point, energy):
    z = CutPlanePoint(abs(energy), PI)
    value = abs(r_func(point, z))
    scale = max(1.0, r_scale(point, z))
    if value > 1e-9 * scale:
        raise AccuracyError(f"|R| = {value:.3e} at the computed eigenvalue {energy!r}", energy)


def eigenvalues(point, window):
    """Eigenvalues in the window [E_lo, E_hi] (both negative), sorted increasingly."""
    point = _self_adjoint(point)
    lo, hi = (float(v) for v in window)
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi < 0:
        raise InvalidArgumentError("window must satisfy E_lo < E_hi < 0")
    s_lo, s_hi = math.log(-hi), math.log(-lo)
    region = phase_region(point)
    sheets = []
    if region is PhaseRegion.Q0:
        return sheets
    if region is PhaseRegion.Q1:
        t, m = _reduce(point.theta)
        s = s_func(CouplingPoint(point.alpha, t))
        if s_lo <= s <= s_hi:
            sheets.append(EigenSheet(point, -m, s, -math.exp(s)))
    else:
        t, m = _reduce(point.theta)
        s0 = _s_reduced(point.alpha, t)
        step = 2 * PI / math.sqrt(-point.alpha)
        j_min = math.ceil((s_lo - s0) / step)
        j_max = math.floor((s_hi - s0) / step)
        for j in range(j_min, j_max + 1):
            s = s0 + j * step
            if s_lo <= s <= s_hi:
                sheets.append(EigenSheet(point, j - m, s, -math.exp(s)))
    for sheet in sheets:
        _post_check(point, sheet.energy)
    sheets.sort(key=lambda sh: sh.energy)
    return sheets


def default_weight(energy):
    """Reference weight (1 + E**2)**-2 used to decide which point masses matter."""
    with np.errstate(over="ignore"):
        return 1.0 / (1.0 + np.float64(energy) ** 2) ** 2


@dataclass
class SpectralMeasure:
    """Spectral measure: point masses ``points`` plus the density ``t_density`` on E > 0.

    ``truncation_note`` records how the infinite point set was cut off.
    """

    coupling: CouplingPoint
    points: tuple
    truncation_note: dict = field(default_factory=dict)

    def density(self, energy):
        return t_density(self.coupling, energy)

    def to_dict(self):
        return {
            "alpha": self.coupling.alpha,
            "theta": self.coupling.theta,
            "points": [[e, m] for e, m in self.points],
            "truncation_note": self.truncation_note,
        }


def _mass_of_branch(point, s):
    e = -math.exp(s)
    return e, point_mass(point, e)


def build_measure(point, point_mass_floor=1e-14, reference_weight=None):
    """Assemble the spectral measure of the self-adjoint realisation at ``point``.

    In Qinf the point masses are kept while mass * reference_weight(E) stays
    above ``point_mass_floor``; the size of the discarded tails is bounded by a
    geometric series and stored in ``truncation_note``.
    """
    point = _self_adjoint(point)
    if point_mass_floor <= 0:
        raise InvalidArgumentError("point_mass_floor must be positive")
    weight = reference_weight or default_weight
    region = phase_region(point)
    note = {"region": str(region), "floor": point_mass_floor}
    if region is PhaseRegion.Q0:
        return SpectralMeasure(point, (), note)
    if region is PhaseRegion.Q1:
        t, _ = _reduce(point.theta)
        s = s_func(CouplingPoint(point.alpha, t))
        points = ()
        if s < 709:
            points = (_mass_of_branch(point, s),)
        return SpectralMeasure(point, points, note)

    t, _ = _reduce(point.theta)
    s0 = _s_reduced(point.alpha, t)
    step = 2 * PI / math.sqrt(-point.alpha)
    j0 = round(-s0 / step)
    kept = {}
    for direction, name in ((1, "upper"), (-1, "lower")):
        j = j0 if direction == 1 else j0 - 1
        prev = None
        dropped = []
        while True:
            s = s0 + j * step
            if not -745 < s < 709:
                break
            e, mass = _mass_of_branch(point, s)
            with np.errstate(over="ignore", under="ignore"):
                size = float(mass * abs(weight(e)))
            if size >= point_mass_floor:
                kept[j] = (e, mass)
                dropped = []
            else:
                dropped.append(size)
                if len(dropped) >= 2 and prev is not None and size <= prev:
                    break
            prev = size
            j += direction
        bound = 0.0
        if dropped:
            ratio = dropped[-1] / dropped[-2] if len(dropped) >= 2 and dropped[-2] > 0 else 0.0
            bound = dropped[0] / (1 - ratio) if ratio < 1 else math.inf
        note[name] = {"last_branch": j, "tail_bound": float(bound)}
    note["tail_bound"] = note["upper"]["tail_bound"] + note["lower"]["tail_bound"]
    points = tuple(kept[j] for j in sorted(kept, key=lambda k: kept[k][0]))
    return SpectralMeasure(point, points, note)


def integrate_measure(measure, phi, quad_tol=1e-10):
    """Integral of phi against the measure: point masses plus the density on E > 0.

    The continuous part is integrated in s = ln E with adaptive Gauss-Kronrod.
    """
    point = measure.coupling
    discrete = math.fsum(m * float(np.real(phi(np.array(e)))) for e, m in measure.points)

    def integrand(s):
        e = np.exp(s)
        return t_density(point, e) * np.asarray(phi(e), dtype=float) * e

    result = quadrature.integrate_line(integrand, quad_tol)
    return discrete + result.value


def frak_t(point, s):
    """Scaled density 2 pi**2 Sinc(pi**2 alpha)**2 t(exp(s)); identically 1 at (0, pi/2)."""
    point = _self_adjoint(point)
    s_arr = np.asarray(s, dtype=float)
    sinc = sinc_entire(PI2 * point.alpha)
    out = 2 * PI2 * sinc * sinc / _big_t(point.alpha, point.theta, s_arr, np.zeros_like(s_arr))
    return _scalar_or_array(out, s)


def j_func(point, s, phi):
    """Scaled 2 pi**2 Sinc(pi**2 alpha)**2 Im m(exp(s + i phi)) for 0 <= phi < pi."""
    point = _self_adjoint(point)
    s_arr, phi_arr = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(phi, dtype=float))
    if np.any(phi_arr < 0) or np.any(phi_arr >= PI):
        raise DomainError("phi must lie in [0, pi)")
    gap = PI - phi_arr
    al = point.alpha
    out = (
        2 * PI * gap * sinc_entire(gap * gap * al) * sinc_entire(PI2 * al)
        / _big_t(al, point.theta, s_arr, phi_arr)
    )
    return _scalar_or_array(out, s, phi)
