"""Numerical probes that check identities, Wronskians and limits.

Each probe returns a :class:`ProbeReport`; relative errors are measured
against the natural size of the terms involved so that cancellation near
zeros does not register as a failure.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import quadrature, spectral
from .entire_trig import cos_entire, cos_entire_deriv, sinc_entire
from .points import CouplingPoint, CutPlanePoint, kappa_of
from .solutions import (
    RadialGridFunction,
    a_sol,
    b_sol,
    u_kappa,
    u_theta,
    v_sol,
    wronskian_ab,
    wronskian_numeric,
    wronskian_u,
)

PI = math.pi
PI2 = PI * PI


@dataclass
class ProbeReport:
    name: str
    samples: int
    max_rel_err: float
    tolerance: float
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True, default=_jsonable)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: max_rel_err={self.max_rel_err:.3e} (tol {self.tolerance:g}, n={self.samples})"


def _jsonable(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, complex):
        return [x.real, x.imag]
    return str(x)


def _report(name, errors, tol, **details):
    errors = np.asarray(errors, dtype=float)
    worst = float(np.max(errors)) if errors.size else 0.0
    return ProbeReport(name, int(errors.size), worst, tol, bool(worst <= tol), details)


def _sample_zeta(rng, n):
    rho = np.exp(rng.uniform(math.log(1e-3), math.log(1e2), n))
    ang = rng.uniform(-PI, PI, n)
    complex_part = rho * np.exp(1j * ang)
    real_part = rng.uniform(-100, 100, n)
    return complex_part, real_part


def _sample_spectral(rng, n):
    alpha = rng.uniform(-4, 0.99, n)
    theta = rng.uniform(-PI, PI, n)
    energy = np.exp(rng.uniform(math.log(1e-6), math.log(1e6), n))
    phi = rng.uniform(-PI / 2 + 1e-3, 3 * PI / 2 - 1e-3, n)
    return alpha, theta, energy, phi


def identity_suite(n_samples=1000, seed=0, tol=1e-9):
    """Seeded checks of the Cos/Sinc identities and the algebraic identities of R and T."""
    rng = np.random.default_rng(seed)
    reports = []
    zc, zr = _sample_zeta(rng, n_samples)

    def sinc4(z):
        lhs = sinc_entire(4 * z)
        rhs = sinc_entire(z) * cos_entire(z)
        return np.abs(lhs - rhs) / np.maximum(np.abs(lhs), np.abs(rhs))

    def sinc2cos2(z):
        s, c = sinc_entire(z), cos_entire(z)
        return np.abs(z * s * s + c * c - 1) / (np.abs(z * s * s) + np.abs(c * c))

    def dcos(z):
        s = sinc_entire(z)
        return np.abs(s + 2 * cos_entire_deriv(z)) / np.abs(s)

    for name, fn in (("sinc4", sinc4), ("sinc2cos2", sinc2cos2), ("cos_deriv", dcos)):
        errs = np.concatenate([fn(zc), fn(zr)])
        reports.append(_report(f"identity:{name}", errs, tol))

    alpha, theta, energy, phi = _sample_spectral(rng, n_samples)
    log_e = np.log(energy)
    r0 = spectral.r_values(alpha, theta, log_e, phi)
    r1 = spectral.r_values(alpha, theta + PI / 2, log_e, phi)
    s0 = spectral.r_scale_values(alpha, theta, log_e, phi)
    s1 = spectral.r_scale_values(alpha, theta + PI / 2, log_e, phi)
    gap = phi - PI
    closed = PI * gap * sinc_entire(gap * gap * alpha) * sinc_entire(PI2 * alpha)
    im_err = np.abs((r1 * np.conj(r0)).imag - closed) / (s0 * s1)
    anti = spectral.r_values(alpha, theta + PI, log_e, phi)
    anti_err = np.abs(anti + r0) / s0
    big_t = spectral.big_t_values(alpha, theta, log_e, phi)
    t_err = np.abs(big_t - 2 * np.abs(r0) ** 2) / (2 * s0 * s0)
    al, ph = alpha, rng.uniform(0, PI, n_samples)
    mu, tau = spectral.mu_func(al, ph), spectral.tau_func(al, ph)
    closed = 4 * PI2 * (PI - ph) ** 2 * sinc_entire(PI2 * al) ** 2 * sinc_entire((PI - ph) ** 2 * al) ** 2
    mu_err = np.abs(mu * mu - tau * tau - closed) / (mu * mu + tau * tau)
    reports.append(_report("identity:im_r", im_err, tol))
    reports.append(_report("identity:mu_tau", mu_err, tol))
    reports.append(_report("identity:antiperiodic", anti_err, tol))
    reports.append(_report("identity:t_equals_2r2", t_err, tol))
    return reports


def _log_grid(r_min=0.25, r_max=4.0, n=2001):
    return np.exp(np.linspace(math.log(r_min), math.log(r_max), n))


def _grid_fn(values, radii):
    return RadialGridFunction(radii, values)


def wronskian_suite(cases, tol=1e-6, radii=None):
    """W(a_sol, b_sol) and W(u_theta, u_{theta+pi/2}) against -2 pi Sinc(pi**2 alpha)**2.

    ``cases`` is an iterable of (alpha, theta, z).
    """
    radii = _log_grid() if radii is None else radii
    errs, worst = [], []
    for alpha, theta, z in cases:
        exact = wronskian_ab(alpha)
        wab = wronskian_numeric(_grid_fn(a_sol(alpha, z, radii), radii), _grid_fn(b_sol(alpha, z, radii), radii))
        u0 = u_theta(CouplingPoint(alpha, theta), z, radii)
        u1 = u_theta(CouplingPoint(alpha, theta + PI / 2), z, radii)
        wuu = wronskian_numeric(_grid_fn(u0, radii), _grid_fn(u1, radii))
        e = max(np.max(np.abs(wab.values - exact)), np.max(np.abs(wuu.values - exact))) / abs(exact)
        errs.append(e)
        worst.append([alpha, theta, str(z), e])
    return _report("wronskian:ab_and_u_theta", errs, tol, cases=worst)


def u_kappa_wronskian_suite(kappas, z=0.8 + 0.3j, tol=1e-8, radii=None):
    """W(u_kappa, u_{-kappa}) against -(2/pi) sin(pi kappa)."""
    radii = _log_grid() if radii is None else radii
    errs = []
    for kappa in kappas:
        exact = wronskian_u(kappa)
        w = wronskian_numeric(_grid_fn(u_kappa(kappa, z, radii), radii), _grid_fn(u_kappa(-kappa, z, radii), radii))
        errs.append(np.max(np.abs(w.values - exact)) / abs(exact))
    return _report("wronskian:u_kappa", errs, tol, kappas=[str(k) for k in kappas])


def weyl_wronskian_check(alpha, theta, z, tol=1e-8, radii=None):
    """W(v_sol, u_theta) against the closed form R(alpha, theta, z)."""
    radii = _log_grid() if radii is None else radii
    point = CouplingPoint(alpha, theta)
    v = v_sol(alpha, z, radii)
    u = u_theta(point, z, radii)
    w = wronskian_numeric(_grid_fn(v, radii), _grid_fn(u, radii))
    exact = spectral.r_func(point, z)
    err = np.max(np.abs(w.values - exact)) / abs(exact)
    return _report(f"weyl_wronskian:{alpha},{theta:.4f},{z}", [err], tol)


_FAMILIES = {
    "A": lambda alpha, theta, z, r: a_sol(alpha, z, r),
    "B": lambda alpha, theta, z, r: b_sol(alpha, z, r),
    "U": lambda alpha, theta, z, r: u_theta(CouplingPoint(alpha, theta), z, r),
    "V": lambda alpha, theta, z, r: v_sol(alpha, z, r),
}


def ode_residual(family, alpha, z, h, radii, theta=PI / 6):
    """Residual of -f'' + (alpha - 1/4) f / r**2 - z f (fourth-order stencil).

    Scaled by the largest |f| (1 + |q| + |z|) over ``radii`` so zeros of f do
    not inflate it.
    """
    fn = _FAMILIES[family]
    offsets = np.arange(-2, 3)
    pts = radii[:, None] + h * offsets[None, :]
    f = fn(alpha, theta, z, pts.ravel()).reshape(pts.shape)
    d2 = (-f[:, 0] + 16 * f[:, 1] - 30 * f[:, 2] + 16 * f[:, 3] - f[:, 4]) / (12 * h * h)
    q = (alpha - 0.25) / radii**2
    res = -d2 + (q - z) * f[:, 2]
    scale = np.max(np.abs(f[:, 2]) * (1 + np.abs(q) + abs(z)))
    return np.abs(res) / scale


def ode_residual_suite(cases, h=0.04, min_order=1.8, radii=None):
    """Observed refinement order of the ODE residual from steps h and h/2.

    ``cases`` holds (alpha, z, family) or (alpha, z, family, theta) tuples
    with family in {"A", "B", "U", "V"}. Residuals already at rounding level
    count as exact.
    """
    radii = np.linspace(0.5, 2.0, 7) if radii is None else radii
    reports = []
    for case in cases:
        alpha, z, family = case[:3]
        theta = case[3] if len(case) > 3 else PI / 6
        coarse = float(np.max(ode_residual(family, alpha, z, h, radii, theta)))
        fine = float(np.max(ode_residual(family, alpha, z, h / 2, radii, theta)))
        exact = coarse < 1e-11
        order = math.inf if exact else math.log2(coarse / fine)
        reports.append(ProbeReport(
            f"ode_residual:{family}:{alpha},{z}",
            len(radii),
            fine,
            min_order,
            bool(exact or order >= min_order),
            {"order": order, "coarse": coarse, "fine": fine, "exact": exact},
        ))
    return reports


def residue_check(point, energy, tol=1e-6, radii=None):
    """Residue of the m-function at an eigenvalue against -mass/pi.

    Samples (z - E) m(z) along z = E + rho exp(i pi/4) and extrapolates to
    rho = 0 by Richardson (error linear in rho).
    """
    point = CouplingPoint(*point) if not isinstance(point, CouplingPoint) else point
    rhos = abs(energy) * 1e-4 * 0.5 ** np.arange(3) if radii is None else np.asarray(radii)
    direction = complex(math.cos(PI / 4), math.sin(PI / 4))
    vals = np.array([rho * direction * spectral.m_func(point, energy + rho * direction) for rho in rhos])
    first = 2 * vals[1:] - vals[:-1]
    limit = (4 * first[1:] - first[:-1]) / 3
    estimate = complex(limit[-1])
    expected = -spectral.point_mass(point, energy) / PI
    err = abs(estimate - expected) / abs(expected)
    return _report(f"residue:{point.alpha},{point.theta:.4f},{energy:.6g}", [err], tol,
                   estimate=[estimate.real, estimate.imag], expected=expected)


def _support_edge(phi, start=1.0, eps=1e-18):
    edge = start
    while edge < 1e6:
        if max(abs(float(phi(np.array(edge)))), abs(float(phi(np.array(-edge))))) * (1 + edge) < eps:
            return edge
        edge *= 2
    return edge


def herglotz_integral(point, phi, eta, e_max, eigen, abs_tol=1e-10):
    """Integral of phi(E) Im m(E + i eta) over [-e_max, e_max]."""
    point = CouplingPoint(*point) if not isinstance(point, CouplingPoint) else point
    breaks = [0.0]
    for e in eigen:
        breaks.append(e)
        for k in range(0, 6):
            breaks.extend([e - eta * 10**k, e + eta * 10**k])

    def integrand(x):
        return np.asarray(phi(x), dtype=float) * spectral.im_m_closed(point, x + 1j * eta)

    return quadrature.gauss_kronrod(integrand, -e_max, e_max, abs_tol, breaks, max_panels=200_000).value


def herglotz_limit_check(point, phi, etas=(1e-2, 1e-3, 1e-4), tol=1e-3, name=None):
    """Integral of phi Im m(E + i eta) approaching the measure integral as eta decreases."""
    point = CouplingPoint(*point) if not isinstance(point, CouplingPoint) else point
    measure = spectral.build_measure(point, 1e-16)
    reference = spectral.integrate_measure(measure, phi, 1e-11)
    e_max = _support_edge(phi)
    eigen = [e for e, _ in measure.points if -e_max < e]
    errs = []
    for eta in etas:
        value = herglotz_integral(point, phi, eta, e_max, eigen)
        errs.append(abs(value - reference) / abs(reference))
    # errors at rounding level count as converged
    monotone = all(a > b or b < 1e-12 for a, b in zip(errs, errs[1:]))
    report = _report(name or f"herglotz:{point.alpha},{point.theta:.4f}", [errs[-1]], tol,
                     eta_errors=dict(zip(map(str, etas), errs)), reference=reference, monotone=monotone)
    report.passed = report.passed and monotone
    return report


def smoothness_probe(theta, phi, h_list=(1e-2, 5e-3, 2.5e-3), quad_tol=1e-10,
                     tol_first=1e-4, tol_second=1e-2, name=None):
    """One-sided alpha-derivatives of the measure integral at alpha = 0 must agree.

    Uses three-point one-sided differences and Richardson extrapolation over
    the halving sequence ``h_list``. ``max_rel_err`` is the larger of the two
    side mismatches divided by its tolerance, so the probe passes at <= 1.
    """
    cache = {}

    def value(alpha):
        if alpha not in cache:
            measure = spectral.build_measure(CouplingPoint(alpha, theta), 1e-18)
            cache[alpha] = spectral.integrate_measure(measure, phi, quad_tol)
        return cache[alpha]

    f0 = value(0.0)
    d1 = {1: [], -1: []}
    d2 = {1: [], -1: []}
    for h in h_list:
        for side in (1, -1):
            f1, f2 = value(side * h), value(side * 2 * h)
            d1[side].append(side * (-3 * f0 + 4 * f1 - f2) / (2 * h))
            d2[side].append((f0 - 2 * f1 + f2) / (h * h))
    first, second = {}, {}
    for side in (1, -1):
        a, b = d1[side][-2], d1[side][-1]
        first[side] = (4 * b - a) / 3
        a, b = d2[side][-2], d2[side][-1]
        second[side] = 2 * b - a
    err1 = abs(first[1] - first[-1]) / max(1.0, abs(first[1]))
    err2 = abs(second[1] - second[-1]) / max(1.0, abs(second[1]))
    passed = err1 <= tol_first and err2 <= tol_second
    return ProbeReport(
        name or f"smoothness:{theta:.4f}",
        len(cache),
        max(err1 / tol_first, err2 / tol_second),
        1.0,
        bool(passed),
        {"first": [first[1], first[-1]], "second": [second[1], second[-1]],
         "first_err": err1, "second_err": err2},
    )


def bound_suite(n_samples=10_000, seed=0):
    """Sampled checks of the two 1/|R| bounds and the bound on R(theta+pi/2)/R(theta)."""
    rng = np.random.default_rng(seed)
    reports = []
    for a in (0.5, 0.9):
        alpha = rng.uniform(-6, a * a, n_samples)
        theta = rng.uniform(-PI, PI, n_samples)
        log_e = rng.uniform(-12, 12, n_samples)
        phi = rng.uniform(0, PI * (1 - 1e-9), n_samples)
        sinc_a = math.sin(PI * a) / (PI * a)
        e = np.exp(log_e)
        inv_r = 1 / np.abs(spectral.r_values(alpha, theta, log_e, phi))
        big_phi = log_e * sinc_entire(-alpha * log_e**2 / 4)
        gap2 = (PI - phi) ** 2
        tau = gap2 * sinc_entire(gap2 * alpha / 4) ** 2 - PI2 * sinc_entire(PI2 * alpha / 4) ** 2
        mu = 2 * PI2 * sinc_entire(PI2 * alpha) ** 2 + cos_entire(PI2 * alpha) * tau
        sharp = np.sqrt(big_phi**2 + mu) / (
            PI * (PI - phi) * sinc_entire(PI2 * alpha) * sinc_entire(gap2 * alpha))
        simple = (np.abs(log_e) + 3 * PI) * (e ** (a / 2) + e ** (-a / 2)) / (2 * PI * (PI - phi) * sinc_a**2)
        ratios_sharp, ratios_simple = inv_r / sharp, inv_r / simple
        for label, ratios in (("sharp", ratios_sharp), ("simple", ratios_simple)):
            ratios = np.array(ratios)
            violations = int(np.sum(ratios > 1 + 1e-12))
            reports.append(ProbeReport(f"bound:inverse_r_{label}:a={a}", n_samples, float(ratios.max()), 1.0,
                                       violations == 0, {"violations": violations}))

    a, b = 0.9, 2.0
    p00 = 0.5 * 24 * PI * math.cosh(PI * b) / (math.sin(PI * a) / (PI * a)) ** 2
    alpha = rng.uniform(-b * b, a * a, n_samples)
    theta = rng.uniform(-PI, PI, n_samples)
    modulus = np.exp(rng.uniform(-12, 12, n_samples))
    phase = rng.uniform(1e-6, PI - 1e-6, n_samples)
    log_m = np.log(modulus)
    ratio = np.abs(spectral.r_values(alpha, theta + PI / 2, log_m, phase)
                   / spectral.r_values(alpha, theta, log_m, phase))
    bound = p00 * (1 + log_m**2) * (1 + modulus) ** (1 + a) / (modulus * np.sin(phase))
    ratios = ratio / bound
    ratios = np.array(ratios)
    violations = int(np.sum(ratios > 1))
    reports.append(ProbeReport("bound:r_ratio", n_samples, float(ratios.max()), 1.0, violations == 0,
                               {"violations": violations}))
    return reports


def kappa_evenness(alpha, z, radii):
    """Largest difference between the kappa and -kappa forms of a_sol and b_sol."""
    from .solutions import a_kappa, b_kappa

    k = kappa_of(alpha)
    da = np.max(np.abs(a_kappa(k, z, radii) - a_kappa(-k, z, radii)))
    db = np.max(np.abs(b_kappa(k, z, radii) - b_kappa(-k, z, radii)))
    return float(max(da, db))
