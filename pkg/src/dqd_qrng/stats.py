"""Lightweight statistical checks on bit streams."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ConfigError, DomainError
from .physics import DeviceParams, measurement_probabilities
from .sampling import BitStream, TimingConfig, derive_seed, generate_stream


@dataclass(frozen=True)
class StreamStats:
    """Summary statistics of one stream.

    ``lag_autocorr`` and ``runs_z`` are None when the stream is constant,
    in which case ``degenerate`` is set.
    """

    n: int
    ones: int
    mean: float
    ci95_halfwidth: float
    shannon_entropy_bits: float
    lag_autocorr: list[float] | None
    chi2_freq: float
    freq_z: float
    runs: int
    runs_z: float | None
    expected_mean: float
    degenerate: bool

    def to_dict(self) -> dict:
        return asdict(self)


def binary_entropy(p: float) -> float:
    if p <= 0 or p >= 1:
        return 0.0
    return float(-p * math.log2(p) - (1 - p) * math.log2(1 - p))


def autocorrelation(x: np.ndarray, max_lag: int) -> np.ndarray:
    """Biased sample autocorrelation for lags 1..max_lag."""
    x = np.asarray(x, dtype=float)
    d = x - x.mean()
    denom = float(d @ d)
    if denom == 0:
        raise DomainError("autocorrelation undefined for a constant sequence")
    n = d.size
    return np.array([float(d[: n - k] @ d[k:]) / denom for k in range(1, max_lag + 1)])


def runs_test(bits: np.ndarray) -> tuple[int, float | None]:
    """Wald-Wolfowitz runs count and z-score, conditioned on the observed counts."""
    n = bits.size
    runs = 1 + int(np.count_nonzero(bits[1:] != bits[:-1])) if n else 0
    n1 = int(bits.sum())
    n0 = n - n1
    if n0 == 0 or n1 == 0:
        return runs, None
    mu = 2.0 * n0 * n1 / n + 1
    var = (mu - 1) * (mu - 2) / (n - 1)
    if var <= 0:
        return runs, None
    return runs, (runs - mu) / math.sqrt(var)


def analyze(stream, max_lag: int = 10, expected_mean: float | None = None) -> StreamStats:
    """Run the frequency, runs, autocorrelation and entropy checks.

    ``stream`` may be a :class:`BitStream` or any 0/1 sequence. The
    frequency test compares against ``expected_mean``; when omitted it
    falls back to the stream's programmed mean, then to 0.5.
    """
    if isinstance(stream, BitStream):
        bits = stream.bits
        if expected_mean is None:
            expected_mean = stream.programmed_mean
    else:
        bits = np.asarray(stream, dtype=np.uint8)
    if expected_mean is None:
        expected_mean = 0.5
    n = bits.size
    if n < 2:
        raise DomainError("need at least 2 bits")
    if not 1 <= max_lag < n:
        raise DomainError(f"max_lag must be in [1, n), got {max_lag}")
    if not 0 < expected_mean < 1:
        raise DomainError("expected_mean must lie in (0, 1)")

    ones = int(bits.sum())
    mean = ones / n
    p = expected_mean
    freq_z = (ones - n * p) / math.sqrt(n * p * (1 - p))
    degenerate = ones in (0, n)
    runs, runs_z = runs_test(bits)
    return StreamStats(
        n=n,
        ones=ones,
        mean=mean,
        ci95_halfwidth=1.96 * math.sqrt(mean * (1 - mean) / n),
        shannon_entropy_bits=binary_entropy(mean),
        lag_autocorr=None if degenerate else autocorrelation(bits, max_lag).tolist(),
        chi2_freq=freq_z * freq_z,
        freq_z=freq_z,
        runs=runs,
        runs_z=runs_z,
        expected_mean=p,
        degenerate=degenerate,
    )


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    rms_error: float
    max_error: float


def convergence_report(
    device: DeviceParams,
    detuning: float,
    n_grid,
    trials: int = 100,
    seed: int = 0,
    workers: int = 1,
) -> list[ConvergenceRow]:
    """Sample-mean error versus stream length over independent trials."""
    if trials < 10:
        raise ConfigError("convergence_report needs at least 10 trials")
    target = measurement_probabilities(device, detuning)[1]

    def one(n, k):
        timing = TimingConfig.for_device(device, n)
        s = generate_stream(device, detuning, timing, derive_seed(seed, n, k))
        return s.mean - target

    rows = []
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        for n in n_grid:
            err = np.fromiter(pool.map(lambda k: one(int(n), k), range(trials)), float, trials)
            rows.append(ConvergenceRow(int(n), float(np.sqrt(np.mean(err**2))), float(np.abs(err).max())))
    return rows


def fit_inverse_sqrt(rows) -> tuple[float, float]:
    """Fit rms = c / sqrt(N) in log space.

    Returns ``c`` and the worst multiplicative deviation of any row from the fit.
    """
    n = np.array([r.n for r in rows], dtype=float)
    rms = np.array([r.rms_error for r in rows])
    scaled = rms * np.sqrt(n)
    c = float(np.exp(np.mean(np.log(scaled))))
    worst = float(np.max(np.maximum(scaled / c, c / scaled)))
    return c, worst
