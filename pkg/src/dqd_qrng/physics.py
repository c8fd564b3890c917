"""Closed-form physics of a single charge on a double quantum dot.

The two localized charge states |0> and |1> form the basis. With tunneling
energy ``gamma`` and detuning ``delta`` (both in eV) the Hamiltonian is::

    H = [[-delta/2, -gamma],
         [-gamma,   +delta/2]]

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.special

from .constants import Q_E, EV_J
from .errors import DomainError, InvalidDeviceError, UnreachableBiasError


class StatisticsMode(str, enum.Enum):
    """Source of randomness for a measurement."""

    QUANTUM = "quantum_ground_state"
    THERMAL = "thermal_boltzmann"

    @classmethod
    def parse(cls, value: "str | StatisticsMode") -> "StatisticsMode":
        if isinstance(value, cls):
            return value
        aliases = {"quantum": cls.QUANTUM, "thermal": cls.THERMAL}
        try:
            return aliases.get(value) or cls(value)
        except ValueError:
            raise DomainError(f"unknown statistics mode {value!r}") from None


@dataclass(frozen=True)
class DeviceParams:
    """Physical constants of one double dot.

    Attributes:
        gamma: tunneling energy in eV, strictly positive.
        t1: relaxation time in seconds.
        dot_separation: vector from dot 0 to dot 1, in metres.
        mobile_charge: charge of the mobile carrier in coulombs.
        temperature: thermal energy kT in eV. Only read in thermal mode.
        statistics_mode: quantum ground-state or thermal Boltzmann sampling.
    """

    gamma: float
    t1: float
    dot_separation: tuple[float, float, float] = (0.0, 0.0, 0.0)
    mobile_charge: float = Q_E
    temperature: float = 0.0
    statistics_mode: StatisticsMode = StatisticsMode.QUANTUM

    def __post_init__(self):
        object.__setattr__(self, "statistics_mode", StatisticsMode.parse(self.statistics_mode))
        object.__setattr__(self, "dot_separation", tuple(float(x) for x in self.dot_separation))
        if len(self.dot_separation) != 3:
            raise InvalidDeviceError("dot_separation must be a 3-vector")
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise InvalidDeviceError(f"gamma must be finite and > 0, got {self.gamma!r}")
        if not (math.isfinite(self.t1) and self.t1 > 0):
            raise InvalidDeviceError(f"t1 must be finite and > 0, got {self.t1!r}")
        if not (math.isfinite(self.temperature) and self.temperature >= 0):
            raise InvalidDeviceError(f"temperature must be >= 0, got {self.temperature!r}")
        if self.statistics_mode is StatisticsMode.THERMAL and self.temperature <= 0:
            raise InvalidDeviceError("thermal_boltzmann mode needs temperature (kT) > 0")

    @property
    def separation_length(self) -> float:
        return math.sqrt(sum(x * x for x in self.dot_separation))


@dataclass(frozen=True)
class GroundState:
    """Eigensystem summary for one (gamma, delta) point."""

    e1: float
    e2: float
    alpha: float
    amp0: float
    amp1: float
    p0: float
    p1: float

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([self.amp0, self.amp1])


def _check_gamma(gamma):
    if not math.isfinite(gamma):
        raise DomainError(f"gamma must be finite, got {gamma!r}")
    if gamma <= 0:
        raise InvalidDeviceError(
            f"gamma must be > 0, got {gamma!r}; uncoupled dots have no tunable ground state"
        )


def _check_delta(delta):
    if not math.isfinite(delta):
        raise DomainError(f"detuning must be finite, got {delta!r}")


def hamiltonian_matrix(gamma: float, delta: float) -> np.ndarray:
    """Return the 2x2 Hamiltonian in the {|0>, |1>} basis, in eV."""
    _check_gamma(gamma)
    _check_delta(delta)
    return np.array([[-delta / 2, -gamma], [-gamma, delta / 2]], dtype=float)


def ground_state(gamma: float, delta: float) -> GroundState:
    """Closed-form ground state and measurement probabilities."""
    _check_gamma(gamma)
    _check_delta(delta)
    s = math.hypot(2 * gamma, delta)
    # (delta + s) cancels for delta << -gamma; use the conjugate form there.
    if delta >= 0:
        alpha = (delta + s) / (2 * gamma)
    else:
        alpha = 2 * gamma / (s - delta)
    norm = math.hypot(alpha, 1.0)
    a2 = alpha * alpha
    return GroundState(
        e1=-s / 2,
        e2=s / 2,
        alpha=alpha,
        amp0=alpha / norm,
        amp1=1.0 / norm,
        p0=a2 / (a2 + 1),
        p1=1.0 / (a2 + 1),
    )


def eigensystem_numeric_oracle(gamma: float, delta: float) -> GroundState:
    """Ground state by generic numeric diagonalization.

    Eigenvalues come from the characteristic polynomial of the matrix
    entries and the eigenvector from the nullspace of ``H - E1 I``. Nothing
    here reuses the closed-form expressions of :func:`ground_state`.
    """
    h = hamiltonian_matrix(gamma, delta)
    tr = h[0, 0] + h[1, 1]
    det = h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0]
    disc = math.sqrt(max(tr * tr - 4 * det, 0.0))
    e1 = (tr - disc) / 2
    e2 = (tr + disc) / 2
    ns = scipy.linalg.null_space(h - e1 * np.eye(2), rcond=1e-12)
    if ns.shape[1] != 1:
        raise DomainError("degenerate spectrum; ground state is not unique")
    v = ns[:, 0]
    v = v / np.linalg.norm(v)
    if v[1] < 0 or (v[1] == 0 and v[0] < 0):
        v = -v
    amp0, amp1 = float(v[0]), float(v[1])
    return GroundState(
        e1=float(e1),
        e2=float(e2),
        alpha=amp0 / amp1,
        amp0=amp0,
        amp1=amp1,
        p0=amp0 * amp0,
        p1=amp1 * amp1,
    )


def mean_value(gamma: float, delta: float) -> float:
    """Ensemble mean of position measurements, i.e. p(1)."""
    return ground_state(gamma, delta).p1


def _check_target_mean(target_mean):
    if not math.isfinite(target_mean) or not 0 <= target_mean <= 1:
        raise DomainError(f"target mean must lie in (0, 1), got {target_mean!r}")
    if target_mean in (0, 1):
        raise UnreachableBiasError(
            f"mean {target_mean} requires infinite detuning; choose a value in (0, 1)"
        )


def detuning_for_mean(gamma: float, target_mean: float) -> float:
    """Detuning (eV) that programs the ground-state mean to ``target_mean``."""
    _check_gamma(gamma)
    _check_target_mean(target_mean)
    x = target_mean
    return gamma * (1 - 2 * x) / math.sqrt(x * (1 - x))


def detuning_from_field(e_field, dot_separation, charge: float = Q_E) -> float:
    """Detuning in eV produced by a static field (V/m) across the dot axis."""
    e_field = np.asarray(e_field, dtype=float)
    a = np.asarray(dot_separation, dtype=float)
    if e_field.shape != (3,) or a.shape != (3,):
        raise DomainError("e_field and dot_separation must be 3-vectors")
    if not np.any(a):
        raise DomainError("dot_separation must be nonzero")
    if not (np.all(np.isfinite(e_field)) and np.all(np.isfinite(a)) and math.isfinite(charge)):
        raise DomainError("field, separation and charge must be finite")
    # Dot products of exactly orthogonal vectors should come out as 0, not -0.
    return float(-charge * float(e_field @ a) / EV_J) + 0.0


def detuning_from_voltage(voltage: float, charge: float = Q_E) -> float:
    """Detuning in eV from a voltage applied directly between the dots."""
    if not (math.isfinite(voltage) and math.isfinite(charge)):
        raise DomainError("voltage and charge must be finite")
    return charge * voltage / EV_J


def thermal_probabilities(delta: float, kT: float) -> tuple[float, float]:
    """Equilibrium occupation of the localized states at energies -delta/2, +delta/2."""
    if not (math.isfinite(kT) and kT > 0):
        raise DomainError(f"kT must be finite and > 0, got {kT!r}")
    _check_delta(delta)
    p1 = float(scipy.special.expit(-delta / kT))
    return 1.0 - p1, p1


def thermal_detuning_for_mean(kT: float, target_mean: float) -> float:
    """Inverse of :func:`thermal_probabilities` for the occupation of |1>."""
    if not (math.isfinite(kT) and kT > 0):
        raise DomainError(f"kT must be finite and > 0, got {kT!r}")
    _check_target_mean(target_mean)
    return kT * float(scipy.special.logit(1 - target_mean))


def measurement_probabilities(device: DeviceParams, delta: float) -> tuple[float, float]:
    """(p0, p1) for one measurement on ``device`` in its statistics mode."""
    if device.statistics_mode is StatisticsMode.THERMAL:
        return thermal_probabilities(delta, device.temperature)
    gs = ground_state(device.gamma, delta)
    return gs.p0, gs.p1


def program_detuning(device: DeviceParams, target_mean: float) -> float:
    """Detuning that gives ``target_mean`` on ``device`` in its statistics mode."""
    if device.statistics_mode is StatisticsMode.THERMAL:
        return thermal_detuning_for_mean(device.temperature, target_mean)
    return detuning_for_mean(device.gamma, target_mean)
