"""Spectral solver for linear wave equations u_tt = Au with a weighted
time-average condition int_0^T exp(i*omega*t) u(t) dt = g in place of the
Cauchy velocity datum, plus the small-denominator diagnostics that show why
omega != 0 keeps the per-mode solves well conditioned."""

from .basis import (
    DirichletLaplacian1D,
    Spectrum,
    SpectralVector,
    TabulatedSpectrum,
    eigen_data,
    eigenfunction_matrix,
    project,
)
from .cauchy import CauchyProblem, derivative_coefficients, solve_cauchy, solve_cauchy_mode
from .phase import (
    Classification,
    DenominatorReport,
    ModeClass,
    ProblemClock,
    classify,
    denominator,
    denominator_via_f,
    phase_distance,
    phi,
    resonance_numerator,
    z_diagnostic,
)
from .quadrature import GaussLegendre
from .solution import ModeCoefficients, SeriesSolution
from .timeavg import (
    BoundCheck,
    IllConditionedModeError,
    NonlocalProblem,
    StabilityReport,
    coefficient_bound_check,
    solve_nonlocal,
    solve_nonlocal_mode,
    stability_report,
)

__version__ = "0.1.0"

__all__ = [
    "BoundCheck",
    "CauchyProblem",
    "Classification",
    "DenominatorReport",
    "DirichletLaplacian1D",
    "GaussLegendre",
    "IllConditionedModeError",
    "ModeClass",
    "ModeCoefficients",
    "NonlocalProblem",
    "ProblemClock",
    "SeriesSolution",
    "SpectralVector",
    "Spectrum",
    "StabilityReport",
    "TabulatedSpectrum",
    "classify",
    "coefficient_bound_check",
    "denominator",
    "denominator_via_f",
    "derivative_coefficients",
    "eigen_data",
    "eigenfunction_matrix",
    "phase_distance",
    "phi",
    "project",
    "resonance_numerator",
    "solve_cauchy",
    "solve_cauchy_mode",
    "solve_nonlocal",
    "solve_nonlocal_mode",
    "stability_report",
    "z_diagnostic",
]
