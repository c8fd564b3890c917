"""Unipolar stochastic computing on DQD-generated streams."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import CorrelatedInputWarning, DomainError, ShapeError
from .physics import DeviceParams, program_detuning
from .sampling import BitStream, TimingConfig, generate_stream


@dataclass(frozen=True, eq=False)
class StochasticNumber:
    stream: BitStream
    nominal_value: float
    encoding: str = "unipolar"

    def __post_init__(self):
        if not 0 <= self.nominal_value <= 1:
            raise DomainError(f"nominal value must lie in [0, 1], got {self.nominal_value!r}")
        if self.encoding != "unipolar":
            raise DomainError("only unipolar encoding is supported")

    @property
    def bits(self) -> np.ndarray:
        return self.stream.bits

    def __len__(self):
        return len(self.stream)

    @classmethod
    def from_bits(cls, bits, nominal_value: float | None = None) -> "StochasticNumber":
        stream = BitStream(np.asarray(bits, dtype=np.uint8))
        if nominal_value is None:
            nominal_value = stream.mean if len(stream) else 0.0
        return cls(stream, nominal_value)


def encode(value: float, n: int, device: DeviceParams, seed: int = 0) -> StochasticNumber:
    """Program the device detuning for ``value`` and record ``n`` ideal cycles."""
    delta = program_detuning(device, value)
    stream = generate_stream(device, delta, TimingConfig.for_device(device, n), seed)
    return StochasticNumber(stream, float(value))


def decode(sn: StochasticNumber) -> float:
    if len(sn) < 1:
        raise DomainError("cannot decode an empty stream")
    return float(sn.bits.mean())


def _shared_source(*operands: StochasticNumber) -> bool:
    seen = set()
    for op in operands:
        s = op.stream
        if s.seed is None:
            continue
        key = (s.seed, s.device)
        if key in seen:
            return True
        seen.add(key)
    return False


def _check(*operands: StochasticNumber):
    n = {len(op) for op in operands}
    if len(n) != 1:
        raise ShapeError(f"operand lengths differ: {sorted(n)}")
    if _shared_source(*operands) or len({id(op.stream) for op in operands}) < len(operands):
        warnings.warn(
            "operands share a random source; the result will be biased",
            CorrelatedInputWarning,
            stacklevel=3,
        )


def _derived(bits, nominal, *operands) -> StochasticNumber:
    stream = BitStream(bits, meta={"derived_from": [op.stream.seed for op in operands]})
    return StochasticNumber(stream, float(nominal))


def sc_multiply(a: StochasticNumber, b: StochasticNumber) -> StochasticNumber:
    """AND gate: decodes to a*b for independent operands."""
    _check(a, b)
    return _derived(a.bits & b.bits, a.nominal_value * b.nominal_value, a, b)


def sc_or(a: StochasticNumber, b: StochasticNumber) -> StochasticNumber:
    """OR gate: decodes to a + b - a*b for independent operands."""
    _check(a, b)
    na, nb = a.nominal_value, b.nominal_value
    return _derived(a.bits | b.bits, na + nb - na * nb, a, b)


def sc_scaled_add(a: StochasticNumber, b: StochasticNumber, select: StochasticNumber) -> StochasticNumber:
    """Multiplexer: bit from ``a`` where ``select`` is 1, else from ``b``."""
    _check(a, b, select)
    s = select.nominal_value
    bits = np.where(select.bits.astype(bool), a.bits, b.bits).astype(np.uint8)
    return _derived(bits, s * a.nominal_value + (1 - s) * b.nominal_value, a, b, select)
