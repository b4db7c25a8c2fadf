import math

import numpy as np
import pytest

from specwave import (
    CauchyProblem,
    NonlocalProblem,
    ProblemClock,
    SpectralVector,
    project,
    solve_cauchy,
    solve_nonlocal,
)
from specwave import verification as ver


@pytest.fixture()
def solved(dirichlet, rng):
    clock = ProblemClock(5.0, 0.01)
    alpha = SpectralVector(rng.standard_normal(100) + 1j * rng.standard_normal(100), dirichlet)
    gamma = SpectralVector(rng.standard_normal(100) + 1j * rng.standard_normal(100), dirichlet)
    problem = NonlocalProblem(dirichlet, clock, alpha, gamma)
    return problem, solve_nonlocal(problem)


def test_initial_condition_residual_at_machine_scale(solved):
    problem, sol = solved
    assert ver.initial_condition_relative(problem, sol) <= 1e-15
    # with a = 0 the residual is exactly zero (C = -D by construction)
    zero_a = NonlocalProblem(
        problem.spectrum,
        problem.clock,
        SpectralVector(np.zeros(len(problem.alpha)), problem.spectrum),
        problem.gamma,
    )
    assert ver.initial_condition_residual(zero_a, solve_nonlocal(zero_a)) == 0.0


def test_integral_condition_residual_small(solved):
    problem, sol = solved
    rel = ver.relative_integral_residual(problem, sol)
    assert rel < 1e-10


def test_integral_residual_detects_wrong_solution(solved, dirichlet):
    problem, sol = solved
    tampered = type(sol)(dirichlet, sol.T, sol.C * 1.01, sol.D, omega=sol.omega)
    assert ver.integral_condition_residual(problem, tampered) > 1e-3


def test_roundtrip_agreement(solved):
    problem, sol = solved
    trip = ver.roundtrip_check(problem, sol)
    assert trip.coefficient_rel < 1e-10
    assert trip.field_max < 1e-9 * (1 + trip.field_scale)


def test_real_system_residuals(solved):
    problem, sol = solved
    re_resid, im_resid = ver.real_system_residuals(problem, sol)
    scale = 1 + problem.gamma.sobolev_norm(0)
    assert re_resid < 1e-8 * scale
    assert im_resid < 1e-8 * scale


def test_mode_energy_drift_tiny(solved):
    _, sol = solved
    assert float(ver.mode_energy_drift(sol).max()) < 1e-12


def test_weak_identity(solved, rng):
    _, sol = solved
    pairs = [tuple(sorted(rng.uniform(0.0, sol.T, 2))) for _ in range(10)]
    assert ver.weak_identity_residual(sol, pairs) < 1e-10


def test_energy_estimate_margin_positive(dirichlet, rng):
    alpha = SpectralVector(rng.standard_normal(50) + 1j * rng.standard_normal(50), dirichlet)
    beta = SpectralVector(rng.standard_normal(50) + 1j * rng.standard_normal(50), dirichlet)
    problem = CauchyProblem(dirichlet, 5.0, alpha, beta)
    sol = solve_cauchy(problem)
    assert ver.energy_estimate_margin(problem, sol) > 0


def test_residuals_at_reference_configuration(dirichlet):
    # a = 0, g = projected parabola, the standard demonstration setup
    clock = ProblemClock(5.0, 0.01)
    g = project(lambda x: x * (math.pi - x), dirichlet, 100)
    a = SpectralVector(np.zeros(100), dirichlet)
    problem = NonlocalProblem(dirichlet, clock, a, g)
    sol = solve_nonlocal(problem)
    assert ver.relative_integral_residual(problem, sol) < 1e-8
    assert ver.initial_condition_residual(problem, sol) == 0.0
    trip = ver.roundtrip_check(problem, sol)
    assert trip.coefficient_rel < 1e-10
