"""Serial measure-relax cycle and bit-stream generation.

Each stream owns a private PCG64 generator (128-bit state) seeded from a
64-bit integer, so regenerating with the same inputs reproduces the bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import HBAR_EV_S
from .errors import ConfigError
from .physics import DeviceParams, measurement_probabilities

SEED_MAX = 2**64


@dataclass(frozen=True)
class TimingConfig:
    """Bit time, measurement duration (both in s) and number of bits."""

    bit_time: float
    measure_time: float
    n_bits: int

    def __post_init__(self):
        if not (math.isfinite(self.bit_time) and math.isfinite(self.measure_time)):
            raise ConfigError("bit_time and measure_time must be finite")
        if not 0 < self.measure_time < self.bit_time:
            raise ConfigError(
                f"need 0 < measure_time < bit_time, got t_m={self.measure_time!r}, "
                f"T_b={self.bit_time!r}"
            )
        if int(self.n_bits) != self.n_bits or self.n_bits < 1:
            raise ConfigError(f"n_bits must be an integer >= 1, got {self.n_bits!r}")
        object.__setattr__(self, "n_bits", int(self.n_bits))

    @property
    def relax_window(self) -> float:
        return self.bit_time - self.measure_time

    @classmethod
    def for_device(cls, device: DeviceParams, n_bits: int) -> "TimingConfig":
        """Comfortable default: t_m = T1/10, T_b = 10 T1."""
        return cls(bit_time=10 * device.t1, measure_time=device.t1 / 10, n_bits=n_bits)


@dataclass(frozen=True)
class Violation:
    constraint: str
    message: str
    ratio: float


@dataclass(frozen=True)
class TimingReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return "timing ok"
        return "; ".join(f"[{v.constraint}] {v.message}" for v in self.violations)


@dataclass(frozen=True, eq=False)
class BitStream:
    """Ordered bits plus the inputs that produced them.

    Metadata fields are ``None`` for streams that were read from disk or
    derived by logic operations.
    """

    bits: np.ndarray
    seed: int | None = None
    detuning: float | None = None
    device: DeviceParams | None = None
    timing: TimingConfig | None = None
    ideal_relaxation: bool = True
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if bits.ndim != 1:
            raise ConfigError("bits must be one-dimensional")
        if bits.size and bits.max() > 1:
            raise ConfigError("bits must be 0 or 1")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)
        if self.timing is not None and self.timing.n_bits != bits.size:
            raise ConfigError("len(bits) does not match timing.n_bits")

    def __len__(self):
        return self.bits.size

    @property
    def mean(self) -> float:
        return float(self.bits.mean())

    @property
    def programmed_mean(self) -> float | None:
        if self.device is None or self.detuning is None:
            return None
        return measurement_probabilities(self.device, self.detuning)[1]


def validate_timing(
    timing: TimingConfig,
    device: DeviceParams,
    *,
    measure_factor: float = 10.0,
    relax_factor: float = 5.0,
    zeno_factor: float = 100.0,
) -> TimingReport:
    """Check a timing plan against the device's relaxation and tunneling scales.

    Checks, each reported independently:

    * ``measure-window``: t_m <= T1 / measure_factor
    * ``relax-window``: T_b - t_m >= relax_factor * T1
    * ``zeno``: T_b >= zeno_factor * pi * hbar / gamma
    """
    t1 = device.t1
    violations = []
    if timing.measure_time > t1 / measure_factor:
        violations.append(Violation(
            "measure-window",
            f"t_m = {timing.measure_time:.3g} s exceeds T1/{measure_factor:g} = "
            f"{t1 / measure_factor:.3g} s; the measured state may relax mid-measurement",
            timing.measure_time / t1,
        ))
    if timing.relax_window < relax_factor * t1:
        note = ""
        if timing.bit_time <= t1:
            note = "; T_b must exceed T1 even though the max bit rate is quoted as 1/T1"
        violations.append(Violation(
            "relax-window",
            f"T_b - t_m = {timing.relax_window:.3g} s is below {relax_factor:g} T1 = "
            f"{relax_factor * t1:.3g} s{note}",
            timing.relax_window / t1,
        ))
    tunnel_time = math.pi * HBAR_EV_S / device.gamma
    if timing.bit_time < zeno_factor * tunnel_time:
        violations.append(Violation(
            "zeno",
            f"T_b = {timing.bit_time:.3g} s is below {zeno_factor:g} pi hbar/gamma = "
            f"{zeno_factor * tunnel_time:.3g} s; repeated measurement may freeze the state",
            timing.bit_time / tunnel_time,
        ))
    return TimingReport(tuple(violations))


def max_bit_rate(device: DeviceParams) -> float:
    """Upper bound on the bit rate, 1/T1 in bits/s."""
    return 1.0 / device.t1


def make_rng(seed: int) -> np.random.Generator:
    if int(seed) != seed or not 0 <= seed < SEED_MAX:
        raise ConfigError(f"seed must be an integer in [0, 2**64), got {seed!r}")
    return np.random.Generator(np.random.PCG64(int(seed)))


def derive_seed(seed: int, *keys: int) -> int:
    """Deterministic 64-bit child seed for sub-streams and trials."""
    words = np.random.SeedSequence([int(seed), *map(int, keys)]).generate_state(2, np.uint32)
    return int(words[0]) | (int(words[1]) << 32)


def sample_bit(probabilities: tuple[float, float], rng: np.random.Generator) -> int:
    """One Born-rule draw: 1 with probability p1."""
    return int(rng.random() < probabilities[1])


def generate_stream(
    device: DeviceParams,
    detuning: float,
    timing: TimingConfig,
    seed: int = 0,
    ideal_relaxation: bool = True,
) -> BitStream:
    """Run ``timing.n_bits`` measure-relax cycles on one device.

    With ``ideal_relaxation`` every measurement starts from the relaxed
    state. Otherwise the device relaxes within the window T_b - t_m only
    with probability 1 - exp(-(T_b - t_m)/T1); when it does not, the next
    measurement repeats the previous outcome.
    """
    if not isinstance(timing, TimingConfig):
        raise ConfigError("timing must be a TimingConfig")
    _, p1 = measurement_probabilities(device, detuning)
    rng = make_rng(seed)
    n = timing.n_bits
    fresh = rng.random(n) < p1
    if ideal_relaxation:
        bits = fresh
    else:
        carry_prob = math.exp(-timing.relax_window / device.t1)
        relaxed = rng.random(n) >= carry_prob
        relaxed[0] = True  # prepared in the ground state at t = 0
        idx = np.where(relaxed, np.arange(n), 0)
        np.maximum.accumulate(idx, out=idx)
        bits = fresh[idx]
    return BitStream(
        bits=bits.astype(np.uint8),
        seed=int(seed),
        detuning=float(detuning),
        device=device,
        timing=timing,
        ideal_relaxation=ideal_relaxation,
    )
