"""Spectral theory of the inverse-square potential on the half line.

Closed-form spectral data (R, m-function, densities, eigenvalues) for the
self-adjoint realisations of -d^2/dr^2 + (alpha - 1/4)/r^2, the solutions that
build them, the eigenfunction transform and numerical verification probes.
"""

from .entire_trig import cos_entire, cos_entire_deriv, sinc_entire
from .exceptions import (
    AccuracyError,
    DomainError,
    InvalidArgumentError,
    InverseSquareError,
    PoleError,
    RangeError,
    UnsupportedParameterError,
)
from .points import CouplingPoint, CutPlanePoint
from .solutions import (
    RadialGridFunction,
    a_sol,
    b_sol,
    u_kappa,
    u_theta,
    v_sol,
    wronskian_ab,
    wronskian_numeric,
    x_kappa,
    y_series,
)
from .spectral import (
    EigenSheet,
    PhaseRegion,
    SpectralMeasure,
    big_t,
    build_measure,
    eigenvalues,
    frak_t,
    im_m_closed,
    integrate_measure,
    j_func,
    m_func,
    phase_region,
    point_mass,
    r_func,
    s_func,
    t_density,
)
from .transform import EnergyGrid, SpectralTransform, TransformResult, forward, inverse
from .verify import ProbeReport

__all__ = [name for name in dir() if not name.startswith("_")]
