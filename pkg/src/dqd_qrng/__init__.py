"""Simulator for a tunable random bit generator built on a double quantum dot."""

from .energy import (
    PRESETS,
    DevicePreset,
    EnergyReport,
    avg_energy_dissipation,
    avg_power,
    energy_report,
    figures_of_merit,
    get_preset,
    relaxation_energies,
)
from .errors import (
    ConfigError,
    CorrelatedInputWarning,
    DomainError,
    InvalidDeviceError,
    ParseError,
    QRNGError,
    ShapeError,
    UnreachableBiasError,
)
from .physics import (
    DeviceParams,
    GroundState,
    StatisticsMode,
    detuning_for_mean,
    detuning_from_field,
    detuning_from_voltage,
    eigensystem_numeric_oracle,
    ground_state,
    hamiltonian_matrix,
    mean_value,
    measurement_probabilities,
    program_detuning,
    thermal_probabilities,
)
from .sampling import (
    BitStream,
    TimingConfig,
    TimingReport,
    generate_stream,
    max_bit_rate,
    sample_bit,
    validate_timing,
)
from .stats import StreamStats, analyze, convergence_report
from .stochastic import StochasticNumber, decode, encode, sc_multiply, sc_or, sc_scaled_add

__version__ = "0.1.0"
