"""Relaxation energy, average dissipation and power, and the device presets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType

from .constants import DEFAULT_KT_EV, EV_J
from .errors import DomainError
from .physics import (
    DeviceParams,
    StatisticsMode,
    _check_delta,
    _check_gamma,
    measurement_probabilities,
)
from .sampling import max_bit_rate


def relaxation_energies(gamma: float, delta: float) -> tuple[float, float]:
    """Energy (eV) released relaxing from |0> and from |1> to the ground state."""
    _check_gamma(gamma)
    _check_delta(delta)
    s = math.hypot(2 * gamma, delta)
    return (s - delta) / 2, (s + delta) / 2


def avg_energy_dissipation(gamma: float, delta: float) -> float:
    """Mean energy (eV) dissipated per measure-relax cycle from the ground state."""
    _check_gamma(gamma)
    _check_delta(delta)
    # 2 g^2 / sqrt(4 g^2 + d^2), written so that d = 0 returns gamma exactly
    return gamma / math.hypot(1.0, delta / (2 * gamma))


def avg_power(gamma: float, delta: float, n_cycles: int, interval: float) -> float:
    """Average power in watts for ``n_cycles`` cycles completed in ``interval`` seconds."""
    if not (math.isfinite(interval) and interval > 0):
        raise DomainError(f"interval must be > 0, got {interval!r}")
    if n_cycles < 0:
        raise DomainError(f"n_cycles must be >= 0, got {n_cycles!r}")
    return (n_cycles / interval) * avg_energy_dissipation(gamma, delta) * EV_J


@dataclass(frozen=True)
class EnergyReport:
    eps0: float
    eps1: float
    avg_dissipation: float
    avg_power: float
    bit_rate: float


def energy_report(device: DeviceParams, delta: float, bit_rate: float | None = None) -> EnergyReport:
    """Energy accounting for ``device`` run at ``bit_rate`` (defaults to 1/T1).

    Dissipation is the probability-weighted mean of the relaxation energies,
    using the device's own statistics mode.
    """
    if bit_rate is None:
        bit_rate = max_bit_rate(device)
    if not (math.isfinite(bit_rate) and bit_rate >= 0):
        raise DomainError(f"bit_rate must be >= 0, got {bit_rate!r}")
    eps0, eps1 = relaxation_energies(device.gamma, delta)
    p0, p1 = measurement_probabilities(device, delta)
    diss = p0 * eps0 + p1 * eps1
    return EnergyReport(eps0, eps1, diss, bit_rate * diss * EV_J, bit_rate)


@dataclass(frozen=True)
class DevicePreset:
    """A named device, or a fixed comparison row when ``params`` is None."""

    name: str
    params: DeviceParams | None
    source: str
    fixed_rate: float | None = None
    fixed_power: float | None = None
    readout_rate: float | None = None


@dataclass(frozen=True)
class FigureOfMerit:
    name: str
    t1: float | None
    max_bit_rate: float
    max_avg_power: float


def figures_of_merit(preset: DevicePreset) -> FigureOfMerit:
    """Maximum bit rate and the average power at that rate with zero detuning."""
    if preset.params is None:
        return FigureOfMerit(preset.name, None, preset.fixed_rate, preset.fixed_power)
    dev = preset.params
    rate = max_bit_rate(dev)
    if preset.readout_rate is not None:
        rate = min(rate, preset.readout_rate)
    # Dissipation per cycle peaks at gamma when the dots are unbiased.
    return FigureOfMerit(preset.name, dev.t1, rate, rate * dev.gamma * EV_J)


_PRESETS = (
    DevicePreset(
        name="molecular-dfa",
        params=DeviceParams(
            gamma=50e-3,
            t1=1e-12,
            dot_separation=(0.67e-9, 0.0, 0.0),
            statistics_mode=StatisticsMode.QUANTUM,
        ),
        source="diferrocenyl acetylene cation: a = 0.67 nm, gamma ~ 50 meV, T1 ~ 1 ps",
    ),
    DevicePreset(
        name="metallic",
        params=DeviceParams(
            gamma=0.5e-3,
            t1=1 / 150e6,  # 6.67 ns
            temperature=DEFAULT_KT_EV,
            statistics_mode=StatisticsMode.THERMAL,
        ),
        source="Al/AlOx metal-dot cell: gamma = 0.5 meV, T1 ~ 6.67 ns",
    ),
    DevicePreset(
        name="cmos-sng-reference",
        params=None,
        source="32-bit LFSR stochastic number generator, 65 nm CMOS at 100 MHz",
        fixed_rate=100e6,
        fixed_power=80.2e-6,
    ),
)

PRESETS = MappingProxyType({p.name: p for p in _PRESETS})


def get_preset(name: str) -> DevicePreset:
    try:
        return PRESETS[name]
    except KeyError:
        raise DomainError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
