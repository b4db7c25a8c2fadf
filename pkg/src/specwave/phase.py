"""Oscillatory phase integrals, per-mode denominators, and the separation diagnostic.

Everything rests on phi(mu, T) = int_0^T exp(i mu t) dt, evaluated with a
small-argument series so values stay accurate through mu = 0. The per-mode
solvability denominator is d_k = phi(omega + theta_k, T) - phi(omega - theta_k, T);
its scaled magnitude |d_k| (1 + theta_k) must stay away from zero for the
time-averaged problem to be well conditioned, and z(m) = min over k <= m of that
quantity is the computable separation diagnostic.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

TWO_PI = 2.0 * math.pi

# below this |mu*T| the closed form loses ~8 digits to cancellation
PHI_SERIES_THRESHOLD = 1e-4

# clocks with dist(2*omega*T, 2*pi*Z) at or below this are rejected by the solver;
# conditioning degrades like the reciprocal of the distance, so warn early
ADMISSIBILITY_TOL = 1e-9
ADMISSIBILITY_WARN = 1e-3

# half-width of the resonance / phase-coincidence bands used by classify
CLASSIFY_TOL = 1e-9

# denominator_via_f degenerates within this distance of theta = +/- omega
F_FORM_MIN_GAP = 1e-3


def phase_distance(x):
    """Distance from x to the nearest multiple of 2*pi."""
    r = np.mod(x, TWO_PI)
    return np.minimum(r, TWO_PI - r)


@dataclass(frozen=True)
class ProblemClock:
    """Time horizon T plus the frequency omega of the exp(i*omega*t) weight."""

    T: float
    omega: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.T) and self.T > 0):
            raise ValueError(f"horizon T must be positive and finite, got {self.T!r}")
        if not math.isfinite(self.omega):
            raise ValueError("omega must be finite")
        margin = self.phase_margin
        if ADMISSIBILITY_TOL < margin <= ADMISSIBILITY_WARN:
            warnings.warn(
                f"2*omega*T is within {margin:.3e} of a multiple of 2*pi; "
                "mode conditioning degrades like the reciprocal of this distance",
                stacklevel=2,
            )

    @property
    def phase_margin(self) -> float:
        """dist(2*omega*T, 2*pi*Z); zero exactly when exp(2i*omega*T) = 1."""
        return float(phase_distance(2.0 * self.omega * self.T))

    @property
    def admissible(self) -> bool:
        """Whether exp(2i*omega*T) != 1 holds with a safe numerical margin.

        omega = 0 is representable (the diagnostics need it) but never admissible.
        """
        return self.phase_margin > ADMISSIBILITY_TOL


def phi(mu, T: float):
    """int_0^T exp(i*mu*t) dt = (exp(i*mu*T) - 1)/(i*mu), continued through mu = 0.

    For |mu*T| below PHI_SERIES_THRESHOLD the quotient is replaced by the series
    T*(1 + z/2 + z^2/6 + z^3/24 + z^4/120), z = i*mu*T, whose truncation error
    there is under 1e-22*T; the direct formula would lose ~8 digits to
    cancellation. Accepts a scalar or array mu.
    """
    if not (math.isfinite(T) and T > 0):
        raise ValueError(f"T must be positive and finite, got {T!r}")
    mu_in = np.asarray(mu, dtype=float)
    if not np.all(np.isfinite(mu_in)):
        raise ValueError("mu must be finite")
    m = np.atleast_1d(mu_in)
    z = 1j * m * T
    out = np.empty(m.shape, dtype=complex)
    small = np.abs(m) * T < PHI_SERIES_THRESHOLD
    big = ~small
    out[big] = (np.exp(z[big]) - 1.0) / (1j * m[big])
    zs = z[small]
    out[small] = T * (1.0 + zs * (0.5 + zs * (1.0 / 6 + zs * (1.0 / 24 + zs / 120))))
    if mu_in.ndim == 0:
        return complex(out[0])
    return out.reshape(mu_in.shape)


def denominator(k, spectrum, clock: ProblemClock):
    """Per-mode solvability denominator d_k = phi(omega + theta_k) - phi(omega - theta_k).

    This is the determinant of the per-mode 2x2 system. Its sign depends on the
    row orientation; only |d_k| is convention-free.
    """
    theta = spectrum.frequency(k)
    return phi(clock.omega + theta, clock.T) - phi(clock.omega - theta, clock.T)


def resonance_numerator(x, clock: ProblemClock):
    """f(x) = exp(i*omega*T) * (i*omega*sin(xT) - x*cos(xT)) + x.

    The zeros of f among the mode frequencies are exactly the zeros of the
    denominator, which is why f drives the generic-mode closed form.
    """
    x = np.asarray(x, dtype=float)
    w = np.exp(1j * clock.omega * clock.T)
    return w * (1j * clock.omega * np.sin(x * clock.T) - x * np.cos(x * clock.T)) + x


def denominator_via_f(k, spectrum, clock: ProblemClock, min_gap: float = F_FORM_MIN_GAP):
    """Closed form d_k = 2 f(theta_k) / (i (omega^2 - theta_k^2)) for generic modes.

    Independent cross-check of `denominator`; refuses within `min_gap` of the
    resonance points theta_k = +/- omega, where the division degenerates and
    the stable phi-based route must be used instead.
    """
    theta = np.asarray(spectrum.frequency(k), dtype=float)
    gap = np.minimum(np.abs(theta - clock.omega), np.abs(theta + clock.omega))
    if np.any(gap <= min_gap):
        raise ValueError(
            f"theta within {min_gap:g} of +/-omega: closed form degenerates, use denominator()"
        )
    value = 2.0 * resonance_numerator(theta, clock) / (1j * (clock.omega**2 - theta**2))
    if np.asarray(k).ndim == 0:
        return complex(value)
    return value


class ModeClass(Enum):
    LAMBDA0 = "resonant"
    LAMBDA1 = "phase-matched"
    LAMBDA2 = "generic"


@dataclass(frozen=True)
class Classification:
    """Partition label for one mode plus the matched sub-case."""

    mode_class: ModeClass
    subcase: str

    @property
    def label(self) -> str:
        if self.subcase == "generic":
            return self.mode_class.value
        return f"{self.mode_class.value}({self.subcase})"


def _classify_theta(theta: float, clock: ProblemClock, tol: float) -> Classification:
    if abs(theta - clock.omega) <= tol:
        return Classification(ModeClass.LAMBDA0, "theta=+omega")
    if abs(theta + clock.omega) <= tol:
        return Classification(ModeClass.LAMBDA0, "theta=-omega")
    if phase_distance((theta - clock.omega) * clock.T) <= tol * clock.T:
        return Classification(ModeClass.LAMBDA1, "phase=+omega")
    if phase_distance((theta + clock.omega) * clock.T) <= tol * clock.T:
        return Classification(ModeClass.LAMBDA1, "phase=-omega")
    return Classification(ModeClass.LAMBDA2, "generic")


def classify(k, spectrum, clock: ProblemClock, tol: float = CLASSIFY_TOL) -> Classification:
    """Assign one mode to the resonant / phase-matched / generic partition.

    Resonant: theta_k = +/-omega within tol. Phase-matched: exp(i*theta_k*T)
    equals exp(+/-i*omega*T) within tol (phase distance). Everything else is
    generic. The bands exist only to absorb floating point; near-misses
    outside them are handled stably by phi.
    """
    return _classify_theta(float(spectrum.frequency(k)), clock, tol)


@dataclass(frozen=True, eq=False)
class DenominatorReport:
    """Per-mode denominators with scaled magnitudes, classes, and the z diagnostic."""

    clock: ProblemClock
    modes: np.ndarray
    thetas: np.ndarray
    values: np.ndarray
    scaled: np.ndarray
    classes: tuple[Classification, ...]

    @property
    def z(self) -> float:
        """min over the stored prefix of |d_k| (1 + theta_k)."""
        return float(self.scaled.min())

    @property
    def argmin_mode(self) -> int:
        return int(self.modes[int(np.argmin(self.scaled))])

    def running_min(self) -> np.ndarray:
        """z(m) for every prefix m = 1..len(modes); nonincreasing."""
        return np.minimum.accumulate(self.scaled)

    def __len__(self) -> int:
        return self.modes.size


def z_diagnostic(m: int, spectrum, clock: ProblemClock, tol: float = CLASSIFY_TOL) -> DenominatorReport:
    """Evaluate d_k for k = 1..m and aggregate the separation diagnostic z(m)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    ks = np.arange(1, m + 1)
    theta = np.asarray(spectrum.frequency(ks), dtype=float)
    d = phi(clock.omega + theta, clock.T) - phi(clock.omega - theta, clock.T)
    scaled = np.abs(d) * (1.0 + theta)
    classes = tuple(_classify_theta(float(t), clock, tol) for t in theta)
    return DenominatorReport(clock, ks, theta, d, scaled, classes)
