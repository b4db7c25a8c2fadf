"""Solver for the wave equation with a weighted time-average condition.

The Cauchy velocity datum is replaced by int_0^T exp(i*omega*t) u(t) dt = g.
Each mode k solves the 2x2 linear system

    C_k + D_k = alpha_k
    C_k phi(omega - theta_k, T) + D_k phi(omega + theta_k, T) = gamma_k

whose determinant is the denominator d_k. The admissibility hypothesis
exp(2i*omega*T) != 1 keeps every |d_k| (1 + theta_k) above a positive floor;
with omega = 0 that floor collapses at near-resonant modes (small divisors),
which is exactly what the diagnostics in `phase` measure.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .basis import SpectralVector
from .phase import CLASSIFY_TOL, Classification, ProblemClock, _classify_theta, phi
from .solution import SeriesSolution

# modes with |d_k| (1 + theta_k) below this floor amplify data noise past ~1e12
CONDITION_FLOOR_SCALE = 1e-12


def condition_floor(T: float) -> float:
    return CONDITION_FLOOR_SCALE * max(1.0, T)


class IllConditionedModeError(ArithmeticError):
    """A mode's scaled denominator fell below the conditioning floor."""

    def __init__(self, k, theta: float, abs_d: float, classification: Classification, floor: float):
        self.k = k
        self.theta = theta
        self.abs_d = abs_d
        self.classification = classification
        self.floor = floor
        where = f"mode k={k}" if k is not None else f"mode with theta={theta:g}"
        super().__init__(
            f"{where}: |d| = {abs_d:.3e}, class {classification.label}, "
            f"scaled magnitude below floor {floor:.3e}; "
            "omega is too close to resonance for a stable solve"
        )


@dataclass(frozen=True, eq=False)
class NonlocalProblem:
    """Data (a, g) for the time-averaged problem over an admissible clock.

    alpha holds the coefficients of a (H^1 datum), gamma those of g (H^2
    datum). Truncation keeps every norm finite, so regularity of g shows up
    only through convergence in N, not as a hard precondition.
    """

    spectrum: object
    clock: ProblemClock
    alpha: SpectralVector
    gamma: SpectralVector

    def __post_init__(self):
        if not self.clock.admissible:
            raise ValueError(
                f"inadmissible clock (T={self.clock.T}, omega={self.clock.omega}): "
                "exp(2i*omega*T) = 1 within tolerance; the averaged problem is not "
                "uniquely solvable there (omega = 0 is allowed only for diagnostics)"
            )
        self.alpha._check_compatible(self.gamma)
        if not (self.spectrum is self.alpha.spectrum or self.spectrum == self.alpha.spectrum):
            raise ValueError("data vectors must live on the problem spectrum")

    def __len__(self) -> int:
        return len(self.alpha)


def solve_nonlocal_mode(
    alpha_k: complex,
    gamma_k: complex,
    theta_k: float,
    clock: ProblemClock,
    k: int | None = None,
) -> tuple[complex, complex]:
    """Solve one mode's 2x2 system by elimination.

    C is recovered as alpha_k - D, so the initial condition holds to rounding
    at the coefficient scale (error below eps (|C| + |D|), and exactly zero
    whenever alpha_k = 0). Raises IllConditionedModeError when |det| (1 + theta)
    falls below the conditioning floor. The stable phi makes this path correct
    through the resonance theta = +/-omega without special-casing.
    """
    if not theta_k > 0:
        raise ValueError("theta must be positive")
    p = phi(clock.omega - theta_k, clock.T)
    q = phi(clock.omega + theta_k, clock.T)
    det = q - p
    if abs(det) * (1.0 + theta_k) < condition_floor(clock.T):
        raise IllConditionedModeError(
            k, theta_k, abs(det), _classify_theta(theta_k, clock, CLASSIFY_TOL), condition_floor(clock.T)
        )
    D = (gamma_k - p * alpha_k) / det
    C = alpha_k - D
    return C, D


def solve_nonlocal(problem: NonlocalProblem) -> SeriesSolution:
    """Assemble all modes of the time-averaged problem.

    u(0) = a holds in coefficients to rounding at the mode scale (C_k is
    alpha_k - D_k by construction); the time-average condition holds
    mode-exactly and is re-checked by independent quadrature in `verification`.
    """
    clock = problem.clock
    theta = problem.alpha.frequencies()
    p = phi(clock.omega - theta, clock.T)
    q = phi(clock.omega + theta, clock.T)
    det = q - p
    scaled = np.abs(det) * (1.0 + theta)
    floor = condition_floor(clock.T)
    if np.any(scaled < floor):
        i = int(np.argmin(scaled))
        raise IllConditionedModeError(
            i + 1, float(theta[i]), float(np.abs(det[i])),
            _classify_theta(float(theta[i]), clock, CLASSIFY_TOL), floor,
        )
    D = (problem.gamma.coefficients - p * problem.alpha.coefficients) / det
    C = problem.alpha.coefficients - D
    return SeriesSolution(problem.spectrum, clock.T, C, D, omega=clock.omega)


@dataclass(frozen=True, eq=False)
class BoundCheck:
    """Per-mode check of |C|+|D| <= c (|alpha| + (1+theta)|gamma|), c = 4/z_floor."""

    c: float
    z_floor: float
    lhs: np.ndarray
    rhs: np.ndarray

    @property
    def margin(self) -> np.ndarray:
        return self.rhs - self.lhs

    @property
    def ok(self) -> np.ndarray:
        return self.margin >= 0.0

    @property
    def all_ok(self) -> bool:
        return bool(self.ok.all())


def coefficient_bound_check(problem: NonlocalProblem, solution: SeriesSolution) -> BoundCheck:
    """Check the per-mode coefficient bound with the observed separation floor.

    z_floor is the minimum of |d_k| (1 + theta_k) over the solved modes; with a
    healthy floor every margin is positive, while omega ~ 0 drives near-resonant
    modes far past the bound.
    """
    clock = problem.clock
    theta = solution.thetas
    det = phi(clock.omega + theta, clock.T) - phi(clock.omega - theta, clock.T)
    z_floor = float((np.abs(det) * (1.0 + theta)).min())
    c = 4.0 / z_floor
    lhs = np.abs(solution.C) + np.abs(solution.D)
    rhs = c * (np.abs(problem.alpha.coefficients) + (1.0 + theta) * np.abs(problem.gamma.coefficients))
    return BoundCheck(c, z_floor, lhs, rhs)


@dataclass(frozen=True)
class StabilityReport:
    """Observed size of the solution against the size of the data."""

    norm_a_h1: float
    norm_g_h2: float
    sup_u_h1: float
    sup_dudt_h0: float
    c_obs: float
    n_modes: int
    bound_constant: float
    bound_min_margin: float
    bound_all_ok: bool

    def to_dict(self) -> dict:
        return asdict(self)


def stability_report(
    problem: NonlocalProblem, solution: SeriesSolution, time_points: int = 1001
) -> StabilityReport:
    """Norm quadruple and observed stability ratio on a uniform time grid.

    c_obs = (sup_t ||u||_H1 + sup_t ||du/dt||_H0) / (||a||_H1 + ||g||_H2),
    reported as 0 for zero data. A well-posed configuration keeps c_obs
    bounded independently of the truncation order.
    """
    sup_u = solution.sup_norm(1, time_points)
    sup_du = solution.sup_norm(0, time_points, derivative=True)
    na = problem.alpha.sobolev_norm(1)
    ng = problem.gamma.sobolev_norm(2)
    data = na + ng
    bound = coefficient_bound_check(problem, solution)
    return StabilityReport(
        norm_a_h1=na,
        norm_g_h2=ng,
        sup_u_h1=sup_u,
        sup_dudt_h0=sup_du,
        c_obs=(sup_u + sup_du) / data if data > 0 else 0.0,
        n_modes=len(solution),
        bound_constant=bound.c,
        bound_min_margin=float(bound.margin.min()),
        bound_all_ok=bound.all_ok,
    )
