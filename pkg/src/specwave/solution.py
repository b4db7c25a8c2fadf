"""Truncated eigenfunction-expansion solutions u(t) = sum_k y_k(t) v_k."""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from .basis import SOBOLEV_ORDERS, SpectralVector, eigenfunction_matrix


@dataclass(frozen=True)
class ModeCoefficients:
    """One oscillator y(t) = C e^{-i theta t} + D e^{i theta t}, theta > 0."""

    C: complex
    D: complex
    theta: float

    def value(self, t):
        ph = np.exp(1j * self.theta * np.asarray(t, dtype=float))
        return self.C * np.conj(ph) + self.D * ph

    def derivative(self, t):
        ph = np.exp(1j * self.theta * np.asarray(t, dtype=float))
        return 1j * self.theta * (self.D * ph - self.C * np.conj(ph))

    def second_derivative(self, t):
        return -(self.theta**2) * self.value(t)

    def antiderivative(self, s, t):
        """int_s^t y(r) dr in closed form."""
        w = 1j * self.theta
        es, et = np.exp(w * np.asarray(s, float)), np.exp(w * np.asarray(t, float))
        return self.C * (np.conj(et) - np.conj(es)) / (-w) + self.D * (et - es) / w

    def energy(self, t):
        """|y'(t)|^2 + theta^2 |y(t)|^2; conserved along the mode ODE."""
        return np.abs(self.derivative(t)) ** 2 + self.theta**2 * np.abs(self.value(t)) ** 2


def _compensated_sum(terms) -> complex:
    """Kahan-compensated accumulation, in the order given."""
    total = 0.0 + 0.0j
    carry = 0.0 + 0.0j
    for term in terms:
        y = term - carry
        t = total + y
        carry = (t - total) - y
        total = t
    return total


@dataclass(frozen=True, eq=False)
class SeriesSolution:
    """u(x, t) = sum_{k=1..N} (C_k e^{-i theta_k t} + D_k e^{i theta_k t}) v_k(x).

    Immutable after assembly; evaluation at distinct points is safe to run
    concurrently. `omega` records the weight frequency when the solution came
    from the time-average solver (None for Cauchy solutions).
    """

    spectrum: object
    T: float
    C: np.ndarray
    D: np.ndarray
    omega: float | None = None

    def __post_init__(self):
        C = np.atleast_1d(np.asarray(self.C, dtype=complex))
        D = np.atleast_1d(np.asarray(self.D, dtype=complex))
        if C.shape != D.shape or C.ndim != 1 or C.size == 0:
            raise ValueError("C and D must be matching nonempty 1-d coefficient arrays")
        if not (np.isfinite(self.T) and self.T > 0):
            raise ValueError("T must be positive")
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "D", D)

    def __len__(self) -> int:
        return self.C.size

    @cached_property
    def thetas(self) -> np.ndarray:
        ks = np.arange(1, len(self) + 1)
        return np.asarray(self.spectrum.frequency(ks), dtype=float)

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        return self.thetas**2

    def mode(self, k: int) -> ModeCoefficients:
        if not 1 <= k <= len(self):
            raise IndexError(f"mode {k} out of range 1..{len(self)}")
        return ModeCoefficients(complex(self.C[k - 1]), complex(self.D[k - 1]), float(self.thetas[k - 1]))

    def _check_time(self, t: np.ndarray):
        slack = 1e-9 * max(1.0, self.T)
        if np.any(t < -slack) or np.any(t > self.T + slack):
            raise ValueError(f"t outside the solution window [0, {self.T}]")

    def mode_values(self, t) -> np.ndarray:
        """y_k(t) for all modes; shape (N,) + shape(t)."""
        t = np.asarray(t, dtype=float)
        self._check_time(t)
        ph = np.exp(1j * np.multiply.outer(self.thetas, t))
        shape = (len(self),) + (1,) * t.ndim
        return self.C.reshape(shape) * np.conj(ph) + self.D.reshape(shape) * ph

    def mode_derivatives(self, t) -> np.ndarray:
        """y_k'(t) for all modes."""
        t = np.asarray(t, dtype=float)
        self._check_time(t)
        ph = np.exp(1j * np.multiply.outer(self.thetas, t))
        shape = (len(self),) + (1,) * t.ndim
        return (1j * self.thetas.reshape(shape)) * (
            self.D.reshape(shape) * ph - self.C.reshape(shape) * np.conj(ph)
        )

    def evaluate(self, x: float, t: float) -> complex:
        """u(x, t); modes are summed in ascending k with compensated accumulation."""
        y = self.mode_values(float(t))
        v = eigenfunction_matrix(self.spectrum, len(self), x)[:, 0]
        return _compensated_sum(y * v)

    def time_derivative(self, x: float, t: float) -> complex:
        """du/dt(x, t), term-wise analytic derivative."""
        y = self.mode_derivatives(float(t))
        v = eigenfunction_matrix(self.spectrum, len(self), x)[:, 0]
        return _compensated_sum(y * v)

    def field(self, xs, ts) -> np.ndarray:
        """u sampled on a space-time grid; shape (len(xs), len(ts))."""
        basis = eigenfunction_matrix(self.spectrum, len(self), xs)
        return basis.T @ self.mode_values(np.asarray(ts, dtype=float))

    def derivative_field(self, xs, ts) -> np.ndarray:
        basis = eigenfunction_matrix(self.spectrum, len(self), xs)
        return basis.T @ self.mode_derivatives(np.asarray(ts, dtype=float))

    def coefficients_at(self, t: float) -> SpectralVector:
        return SpectralVector(self.mode_values(float(t)), self.spectrum)

    def derivative_coefficients_at(self, t: float) -> SpectralVector:
        return SpectralVector(self.mode_derivatives(float(t)), self.spectrum)

    def initial_coefficients(self) -> SpectralVector:
        """Coefficients of u(0), i.e. C + D."""
        return SpectralVector(self.C + self.D, self.spectrum)

    def norm_trajectory(self, q: int, ts, derivative: bool = False) -> np.ndarray:
        """H^q norm of u (or du/dt) at each grid time, from coefficients alone."""
        if q not in SOBOLEV_ORDERS:
            raise ValueError(f"unsupported Sobolev order q={q}; expected one of {SOBOLEV_ORDERS}")
        ts = np.asarray(ts, dtype=float)
        y = self.mode_derivatives(ts) if derivative else self.mode_values(ts)
        return np.sqrt(self.eigenvalues**q @ np.abs(y) ** 2)

    def sup_norm(self, q: int, time_points: int = 1001, derivative: bool = False) -> float:
        """Grid maximum of the H^q norm over [0, T]."""
        ts = np.linspace(0.0, self.T, time_points)
        return float(self.norm_trajectory(q, ts, derivative=derivative).max())

    def real_imaginary_parts(self):
        """Point evaluators for v = Re u and w = Im u.

        Both fields solve the wave equation; together they carry the complex
        time-average condition as two coupled real integral conditions.
        """

        def v(x, t):
            return self.evaluate(x, t).real

        def w(x, t):
            return self.evaluate(x, t).imag

        return v, w

    def __add__(self, other: "SeriesSolution") -> "SeriesSolution":
        if len(self) != len(other) or self.T != other.T or not (
            self.spectrum is other.spectrum or self.spectrum == other.spectrum
        ):
            raise ValueError("solutions must share spectrum, horizon, and truncation")
        omega = self.omega if self.omega == other.omega else None
        return SeriesSolution(self.spectrum, self.T, self.C + other.C, self.D + other.D, omega)

    def scaled(self, s) -> "SeriesSolution":
        return replace(self, C=self.C * complex(s), D=self.D * complex(s))
