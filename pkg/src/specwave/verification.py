"""Independent checks of assembled solutions: residuals, round trips, conservation.

Every check here goes through a route different from the one that produced the
solution (time quadrature instead of phase integrals, the Cauchy solver as a
round-trip oracle, closed-form antiderivatives for the weak identity), so a
green check is evidence rather than tautology.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cauchy import CauchyProblem, derivative_coefficients, solve_cauchy
from .quadrature import GaussLegendre
from .solution import SeriesSolution
from .timeavg import NonlocalProblem


def initial_condition_residual(problem, solution: SeriesSolution) -> float:
    """max_k |(C_k + D_k) - alpha_k|."""
    diff = solution.initial_coefficients().coefficients - problem.alpha.coefficients
    return float(np.max(np.abs(diff)))


def initial_condition_relative(problem, solution: SeriesSolution) -> float:
    """max_k |(C_k + D_k) - alpha_k| / (1 + |C_k| + |D_k|).

    Scaled per mode: when |D_k| dwarfs |alpha_k| the best any binary64 solve
    can promise is agreement at the coefficient scale (~eps |D_k|), not at the
    scale of alpha itself.
    """
    diff = np.abs(solution.initial_coefficients().coefficients - problem.alpha.coefficients)
    scale = 1.0 + np.abs(solution.C) + np.abs(solution.D)
    return float(np.max(diff / scale))


def _time_rule(problem: NonlocalProblem, rule: GaussLegendre | None) -> GaussLegendre:
    if rule is not None:
        return rule
    # resolve the fastest oscillation exp(i (omega + theta_N) t) comfortably
    top = float(problem.alpha.frequencies()[-1]) + abs(problem.clock.omega)
    panels = max(64, int(np.ceil(top * problem.clock.T / 4.0)))
    return GaussLegendre(panels=panels, order=8)


def integral_condition_residual(
    problem: NonlocalProblem, solution: SeriesSolution, rule: GaussLegendre | None = None
) -> float:
    """H^0 norm of (quadrature of int_0^T e^{i omega t} u dt) - g.

    The moment integral is evaluated per mode by Gauss-Legendre quadrature in
    time, independent of the phase integrals used to build the solution.
    """
    clock = problem.clock
    nodes, weights = _time_rule(problem, rule).nodes_weights(0.0, clock.T)
    moments = solution.mode_values(nodes) @ (weights * np.exp(1j * clock.omega * nodes))
    resid = moments - problem.gamma.coefficients
    return float(np.sqrt(np.sum(np.abs(resid) ** 2)))


def relative_integral_residual(
    problem: NonlocalProblem, solution: SeriesSolution, rule: GaussLegendre | None = None
) -> float:
    return integral_condition_residual(problem, solution, rule) / (
        1.0 + problem.gamma.sobolev_norm(0)
    )


def real_system_residuals(
    problem: NonlocalProblem, solution: SeriesSolution, rule: GaussLegendre | None = None
) -> tuple[float, float]:
    """Residuals of the two coupled real integral conditions for v = Re u, w = Im u.

    Splitting the complex condition:
        int_0^T [cos(wt) v - sin(wt) w] dt = Re g
        int_0^T [sin(wt) v + cos(wt) w] dt = Im g
    Both are checked in coefficient space (the eigenfunctions are real, so
    Re/Im pass through the expansion) and returned as H^0 norms.
    """
    clock = problem.clock
    nodes, weights = _time_rule(problem, rule).nodes_weights(0.0, clock.T)
    y = solution.mode_values(nodes)
    v, w = y.real, y.imag
    cosw = weights * np.cos(clock.omega * nodes)
    sinw = weights * np.sin(clock.omega * nodes)
    re_resid = (v @ cosw - w @ sinw) - problem.gamma.coefficients.real
    im_resid = (v @ sinw + w @ cosw) - problem.gamma.coefficients.imag
    return (
        float(np.sqrt(np.sum(re_resid**2))),
        float(np.sqrt(np.sum(im_resid**2))),
    )


@dataclass(frozen=True)
class RoundTrip:
    """Agreement between a solution and its Cauchy re-solve with b = du/dt(0)."""

    coefficient_rel: float
    field_max: float
    field_scale: float


def roundtrip_check(
    problem: NonlocalProblem, solution: SeriesSolution, grid: tuple[int, int] = (20, 20)
) -> RoundTrip:
    """Extract b = du/dt(0), re-solve as a Cauchy problem, compare both ways."""
    b = derivative_coefficients(solution)
    redone = solve_cauchy(CauchyProblem(problem.spectrum, problem.clock.T, problem.alpha, b))
    scale = max(np.abs(solution.C).max(), np.abs(solution.D).max(), 1e-300)
    coeff = max(
        np.abs(redone.C - solution.C).max(), np.abs(redone.D - solution.D).max()
    ) / scale
    a, bb = problem.spectrum.domain
    xs = np.linspace(a, bb, grid[0])
    ts = np.linspace(0.0, problem.clock.T, grid[1])
    f1 = solution.field(xs, ts)
    f2 = redone.field(xs, ts)
    fscale = float(np.abs(f1).max())
    return RoundTrip(float(coeff), float(np.abs(f1 - f2).max()), fscale)


def mode_energy_drift(solution: SeriesSolution, time_points: int = 1000) -> np.ndarray:
    """Per-mode relative drift of |y'|^2 + lambda |y|^2 over [0, T]."""
    ts = np.linspace(0.0, solution.T, time_points)
    y = solution.mode_values(ts)
    yp = solution.mode_derivatives(ts)
    energy = np.abs(yp) ** 2 + solution.eigenvalues[:, None] * np.abs(y) ** 2
    top = energy.max(axis=1)
    return (top - energy.min(axis=1)) / np.where(top > 0, top, 1.0)


def weak_identity_residual(solution: SeriesSolution, pairs) -> float:
    """max over modes and (s, t) pairs of |y'(t) - y'(s) + lambda int_s^t y dr|.

    The integral uses the closed-form antiderivative, so this checks that each
    mode genuinely satisfies the integrated form of the oscillator equation.
    """
    worst = 0.0
    for k in range(1, len(solution) + 1):
        mode = solution.mode(k)
        lam = mode.theta**2
        for s, t in pairs:
            lhs = mode.derivative(t) - mode.derivative(s)
            rhs = -lam * mode.antiderivative(s, t)
            worst = max(worst, abs(lhs - rhs))
    return worst


def energy_estimate_margin(problem: CauchyProblem, solution: SeriesSolution,
                           constant: float = 4.0, time_points: int = 1001) -> float:
    """Margin of sup_t ||u||_H1 + sup_t ||u'||_H0 <= constant (||a||_H1 + ||b||_H0)."""
    lhs = solution.sup_norm(1, time_points) + solution.sup_norm(0, time_points, derivative=True)
    rhs = constant * (problem.alpha.sobolev_norm(1) + problem.beta.sobolev_norm(0))
    return rhs - lhs
