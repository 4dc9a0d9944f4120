"""Command-line front end.

Every command writes a table (header row, LF line endings) as CSV or as JSON
lines. Floats are written with ``repr`` so they round-trip exactly.

Exit status: 0 ok, 2 domain or argument error, 3 accuracy error, 64 usage
error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import spectral, transform, verify
from .entire_trig import cos_entire, cos_entire_deriv, sinc_entire
from .exceptions import AccuracyError, DomainError, InvalidArgumentError, InverseSquareError
from .points import CouplingPoint, CutPlanePoint
from .solutions import RadialGridFunction, a_sol, b_sol, u_theta, v_sol

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_ACCURACY = 3
EXIT_USAGE = 64
EXIT_IO = 74

THREADS_ENV = "INVERSESQUARE_THREADS"
PI = math.pi


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_grid(text):
    """Grid mini-language: ``lin:a,b,n``, ``log:a,b,n`` or a comma list of numbers."""
    try:
        if text.startswith(("lin:", "log:")):
            kind, rest = text.split(":", 1)
            a, b, n = rest.split(",")
            a, b, n = float(a), float(b), int(n)
            if n < 1:
                raise ValueError
            if kind == "lin":
                grid = np.linspace(a, b, n)
                # snap roundoff so grids through zero contain an exact zero
                grid[np.abs(grid) < 1e-12 * max(abs(a), abs(b))] = 0.0
                return grid
            if a <= 0 or b <= 0:
                raise ValueError
            return np.exp(np.linspace(math.log(a), math.log(b), n))
        return np.array([float(x) for x in text.split(",")])
    except ValueError:
        raise InvalidArgumentError(f"bad grid text {text!r}") from None


def parse_pair(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidArgumentError(f"expected two comma separated numbers, got {text!r}")
    return float(parts[0]), float(parts[1])


def fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def write_table(columns, rows, out, fmt_name):
    if fmt_name == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    else:
        for row in rows:
            record = {}
            for k, v in zip(columns, row):
                if isinstance(v, (float, np.floating)):
                    record[k] = float(v)
                elif isinstance(v, (int, np.integer)) and not isinstance(v, bool):
                    record[k] = int(v)
                else:
                    record[k] = fmt(v)
            out.write(json.dumps(record) + "\n")


def _threads():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _ordered_map(fn, items):
    """Map in parallel when requested; results are merged in input order."""
    items = list(items)
    threads = _threads()
    if threads == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(fn, items))


def _point(args):
    return CouplingPoint(args.alpha, args.theta)


# commands -----------------------------------------------------------------

_ENTIRE = {"cos": cos_entire, "sinc": sinc_entire, "dcos": cos_entire_deriv}
_SOLUTIONS = {"A": a_sol, "B": b_sol, "V": v_sol}


def cmd_eval(args):
    q = args.quantity
    if q in _ENTIRE:
        xs = parse_grid(args.x_grid)
        return ["x", q], [(x, float(_ENTIRE[q](x))) for x in xs]
    if q == "S":
        return ["alpha", "theta", "S"], [(args.alpha, args.theta, spectral.s_func(_point(args)))]
    z = complex(args.energy) if args.modulus is None else CutPlanePoint(args.modulus, args.phase).z
    if q in ("A", "B", "U", "V"):
        radii = parse_grid(args.r_grid)
        if q == "U":
            vals = u_theta(_point(args), z, radii)
        else:
            vals = _SOLUTIONS[q](args.alpha, z, radii)
        return ["r", "re", "im"], [(r, v.real, v.imag) for r, v in zip(radii, np.atleast_1d(vals))]
    point = _point(args)
    if args.e_grid:
        energies = parse_grid(args.e_grid)
        zs = energies * np.exp(1j * args.phase)
    else:
        energies = np.array([abs(z)])
        zs = np.array([z])
    fn = {"R": spectral.r_func, "M": spectral.m_func, "T": spectral.big_t}[q]
    vals = np.atleast_1d(fn(point, zs))
    return ["modulus", "phase", "re", "im"], [
        (e, args.phase if args.e_grid else CutPlanePoint.from_complex(zz).phase, complex(v).real, complex(v).imag)
        for e, zz, v in zip(energies, zs, vals)
    ]


def cmd_eigen(args):
    sheets = spectral.eigenvalues(_point(args), parse_pair(args.window))
    return ["branch", "s", "energy", "mass"], [
        (sh.branch_index, sh.s, sh.energy, spectral.point_mass(_point(args), sh.energy)) for sh in sheets
    ]


def cmd_phase(args):
    alphas = parse_grid(args.alpha_grid) if args.alpha_grid else [args.alpha]
    thetas = parse_grid(args.theta_grid) if args.theta_grid else [args.theta]
    rows = [(a, t, str(spectral.phase_region(CouplingPoint(a, t)))) for a in alphas for t in thetas]
    return ["alpha", "theta", "region"], rows


def cmd_density(args):
    energies = parse_grid(args.e_grid)
    vals = np.atleast_1d(spectral.t_density(_point(args), energies))
    return ["energy", "density"], list(zip(energies, vals))


def cmd_measure(args):
    point = _point(args)
    measure = spectral.build_measure(point, args.floor)
    rows = [("point", e, m) for e, m in measure.points]
    if args.integrate:
        center, width = parse_pair(args.integrate)
        phi = lambda e: np.exp(-0.5 * ((np.asarray(e) - center) / width) ** 2)  # noqa: E731
        rows.append(("integral", center, spectral.integrate_measure(measure, phi, args.quad_tol)))
    rows.append(("tail_bound", 0.0, float(measure.truncation_note.get("tail_bound", 0.0))))
    return ["kind", "energy", "value"], rows


def cmd_transform(args):
    point = _point(args)
    center, width = parse_pair(args.bump)
    a, b = parse_pair(args.support)
    psi = RadialGridFunction.gauss_legendre(transform.gaussian_bump(center, width, (a, b)), a, b, 8, 16)
    grid = transform.EnergyGrid.log_gauss(args.e_max, args.nodes)
    measure = spectral.build_measure(point)
    res = transform.forward(point, psi, grid, measure)
    rows = [("continuous", e, v) for e, v in zip(grid.energies, res.continuous_part)]
    rows += [("point", e, v) for e, v in zip(res.point_energies, res.point_part)]
    return ["kind", "energy", "value"], rows


# figures ------------------------------------------------------------------

FIGURE_DEFAULTS = {
    "phase-diagram": {"alpha_grid": "lin:-3.95,0.95,50", "theta_grid": "lin:-3.0159289474462017,3.141592653589793,50"},
    "eigen-branches": {"alpha_grid": "lin:-4,0.96,125", "thetas": "1.5707963267948966,-1.0471975511965976,0,0.5235987755982988",
                       "s_window": "-12,12"},
    "density-map": {"alpha_grid": "lin:-4,0.96,63", "s_grid": "lin:-12,12,61",
                    "thetas": "1.5707963267948966,-1.0471975511965976,0,0.5235987755982988"},
    "m-plane": {"alpha": -0.5, "theta": 0.5235987755982988, "s_grid": "lin:-20,20,161", "phi_grid": "lin:0,3.1,32"},
}


def _opt(args, key):
    value = getattr(args, key, None)
    return FIGURE_DEFAULTS[args.id][key] if value is None else value


def figure_phase_diagram(args):
    alphas = parse_grid(_opt(args, "alpha_grid"))
    thetas = parse_grid(_opt(args, "theta_grid"))
    rows = _ordered_map(
        lambda a: [(a, t, str(spectral.phase_region(CouplingPoint(a, t)))) for t in thetas], alphas)
    return ["alpha", "theta", "region"], [r for chunk in rows for r in chunk]


def figure_eigen_branches(args):
    alphas = parse_grid(_opt(args, "alpha_grid"))
    thetas = parse_grid(_opt(args, "thetas"))
    s_lo, s_hi = parse_pair(_opt(args, "s_window"))

    def rows_for(theta):
        out = []
        for a in alphas:
            for sh in spectral.eigenvalues(CouplingPoint(a, theta), (-math.exp(s_hi), -math.exp(s_lo))):
                out.append((theta, a, sh.branch_index, sh.s))
        return out

    chunks = _ordered_map(rows_for, thetas)
    return ["theta", "alpha", "branch", "s"], [r for c in chunks for r in c]


def figure_density_map(args):
    alphas = parse_grid(_opt(args, "alpha_grid"))
    s_values = parse_grid(_opt(args, "s_grid"))
    thetas = parse_grid(_opt(args, "thetas"))
    jobs = [(t, a) for t in thetas for a in alphas]

    def rows_for(job):
        t, a = job
        vals = spectral.frak_t(CouplingPoint(a, t), s_values)
        return [(t, a, s, v) for s, v in zip(s_values, vals)]

    chunks = _ordered_map(rows_for, jobs)
    return ["theta", "alpha", "s", "frak_t"], [r for c in chunks for r in c]


def figure_m_plane(args):
    alpha = FIGURE_DEFAULTS["m-plane"]["alpha"] if args.alpha is None else args.alpha
    theta = FIGURE_DEFAULTS["m-plane"]["theta"] if args.theta is None else args.theta
    s_values = parse_grid(_opt(args, "s_grid"))
    phis = parse_grid(_opt(args, "phi_grid"))
    point = CouplingPoint(alpha, theta)

    def rows_for(phi):
        vals = spectral.j_func(point, s_values, phi)
        return [(s, phi, v) for s, v in zip(s_values, vals)]

    chunks = _ordered_map(rows_for, phis)
    return ["s", "phi", "J"], [r for c in chunks for r in c]


FIGURES = {
    "phase-diagram": figure_phase_diagram,
    "eigen-branches": figure_eigen_branches,
    "density-map": figure_density_map,
    "m-plane": figure_m_plane,
}


def cmd_figure(args):
    return FIGURES[args.id](args)


def cmd_verify(args):
    reports = []
    suites = ["identities", "wronskian", "ode", "residue", "herglotz", "smoothness", "bounds"] \
        if args.suite == "all" else [args.suite]
    for suite in suites:
        reports.extend(SUITES[suite](args.seed))
    rows = [(r.name, r.samples, r.max_rel_err, r.tolerance, r.passed, json.dumps(r.details, sort_keys=True,
                                                                                  default=verify._jsonable))
            for r in reports]
    failed = not all(r.passed for r in reports)
    return ["name", "samples", "max_rel_err", "tolerance", "passed", "details"], rows, failed


def _gauss(center, width):
    return lambda e: np.exp(-0.5 * ((np.asarray(e) - center) / width) ** 2)


SUITES = {
    "identities": lambda seed: verify.identity_suite(1000, seed),
    "wronskian": lambda seed: [
        verify.wronskian_suite([(a, t, z) for a in (-1.0, 0.0, 0.25, 0.8, 3e-5) for t in (0.0, 0.7)
                                for z in (1.0, -1.0)]),
        verify.u_kappa_wronskian_suite([0.3, 0.7, 0.5j]),
    ] + [verify.weyl_wronskian_check(a, 0.4, z) for a in (-1.0, 0.25) for z in (1.0, -1.0, 1j)],
    "ode": lambda seed: verify.ode_residual_suite(
        [(a, z, f) for a in (-1.0, 0.0, 0.25, 0.8) for z in (1.0, -1.0, 1j) for f in "ABUV"]),
    "residue": lambda seed: [verify.residue_check(p, sh.energy)
                             for p in ((0.0, 0.0), (0.1, 0.3), (-1.0, PI / 6))
                             for sh in spectral.eigenvalues(CouplingPoint(*p), (-1e4, -1e-4))],
    "herglotz": lambda seed: [verify.herglotz_limit_check((0.0, 0.0), _gauss(-1, 0.35)),
                              verify.herglotz_limit_check((-1.0, PI / 2), _gauss(0, 0.7))],
    "smoothness": lambda seed: [verify.smoothness_probe(t, _gauss(0, 1)) for t in (0.0, PI / 6, PI / 2)],
    "bounds": lambda seed: verify.bound_suite(10_000, seed),
}


# parser -------------------------------------------------------------------

def build_parser():
    parser = _Parser(prog="inversesquare", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=["csv", "json-lines"], default="csv")
    parser.add_argument("--output", help="write to this file instead of stdout")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["csv", "json-lines"], default=argparse.SUPPRESS)
    common.add_argument("--output", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **k: _add(*a, parents=[common], **k)

    def coupling(p, required=True):
        p.add_argument("--alpha", type=float, required=required)
        p.add_argument("--theta", type=float, required=required, default=None if required else 0.0)

    p = sub.add_parser("eval", help="evaluate a quantity on a grid")
    p.add_argument("--quantity", required=True, choices=["cos", "sinc", "dcos", "A", "B", "U", "V", "R", "M", "T", "S"])
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--x-grid", default="lin:-10,10,21")
    p.add_argument("--r-grid", default="log:0.01,10,50")
    p.add_argument("--energy", type=complex, default=1.0)
    p.add_argument("--modulus", type=float)
    p.add_argument("--phase", type=float, default=0.0)
    p.add_argument("--e-grid")

    p = sub.add_parser("eigen", help="eigenvalues in a window")
    coupling(p)
    p.add_argument("--window", default="-1e6,-1e-6")

    p = sub.add_parser("phase", help="phase region of a coupling point")
    coupling(p, required=False)
    p.add_argument("--alpha-grid")
    p.add_argument("--theta-grid")

    p = sub.add_parser("density", help="density of the continuous spectrum")
    coupling(p)
    p.add_argument("--e-grid", required=True)

    p = sub.add_parser("measure", help="point masses and measure integrals")
    coupling(p)
    p.add_argument("--floor", type=float, default=1e-14)
    p.add_argument("--integrate", help="center,width of a Gaussian test function")
    p.add_argument("--quad-tol", type=float, default=1e-10)

    p = sub.add_parser("transform", help="forward transform of a Gaussian bump")
    coupling(p)
    p.add_argument("--bump", default="1.5,0.08333333333333333")
    p.add_argument("--support", default="1,2")
    p.add_argument("--e-max", type=float, default=400.0)
    p.add_argument("--nodes", type=int, default=2048)

    p = sub.add_parser("figure", help="data behind the figures")
    p.add_argument("--id", required=True, choices=sorted(FIGURES))
    p.add_argument("--alpha", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--alpha-grid")
    p.add_argument("--theta-grid")
    p.add_argument("--thetas")
    p.add_argument("--s-grid")
    p.add_argument("--s-window")
    p.add_argument("--phi-grid")

    p = sub.add_parser("verify", help="run verification probes")
    p.add_argument("--suite", default="all", choices=["all", *SUITES])
    p.add_argument("--seed", type=int, default=0)
    return parser


COMMANDS = {
    "eval": cmd_eval,
    "eigen": cmd_eigen,
    "phase": cmd_phase,
    "density": cmd_density,
    "measure": cmd_measure,
    "transform": cmd_transform,
    "figure": cmd_figure,
    "verify": cmd_verify,
}


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required")
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    failed = False
    try:
        result = COMMANDS[args.command](args)
        if len(result) == 3:
            columns, rows, failed = result
        else:
            columns, rows = result
        buf = io.StringIO()
        write_table(columns, rows, buf, args.format)
    except AccuracyError as exc:
        stderr.write(f"accuracy error: {exc}\n")
        return EXIT_ACCURACY
    except (DomainError, InvalidArgumentError, InverseSquareError, ValueError) as exc:
        stderr.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(buf.getvalue())
        else:
            stdout.write(buf.getvalue())
    except OSError as exc:
        stderr.write(f"I/O error: {exc}\n")
        return EXIT_IO
    return EXIT_ACCURACY if failed else EXIT_OK


def main():
    sys.exit(run())
